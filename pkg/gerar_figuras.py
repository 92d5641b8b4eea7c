import sys
import warnings
from pathlib import Path

from critlocus.construct import build_construction, cantor_gaps
from critlocus.critical import critical_search, square_critical_family
from critlocus.errors import CritLocusError, ParallelogramWarning
from critlocus.geometry import Disc, HexagonDomain, Parallelogram
from critlocus.render import RenderSpec, write_svg


def gerar_figuras(destino='figuras'):
    pasta = Path(destino)
    pasta.mkdir(parents=True, exist_ok=True)
    print("🚀 Gerando figuras de referência...")

    # 1. Disco com o reticulado hexagonal
    disco = Disc()
    write_svg(pasta / 'disco.svg', disco, critical_search(disco).best.lattice, title='Disco')
    print("✅ disco.svg")

    # 2. Quadrado com um membro da família de cisalhamento
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', ParallelogramWarning)
        write_svg(pasta / 'quadrado.svg', Parallelogram(), square_critical_family('x', 0.25),
                  title='Quadrado')
    print("✅ quadrado.svg")

    # 3. Hexágono regular
    hexagono = HexagonDomain.regular()
    write_svg(pasta / 'hexagono.svg', hexagono, critical_search(hexagono).best.lattice,
              title='Hexágono regular')
    print("✅ hexagono.svg")

    # 4. Tenda: disco com os triângulos tangentes do Cantor de nível 2
    composto = build_construction(disco, cantor_gaps(2))
    ponto, _ = composto.arc.point_at(0.0)
    write_svg(pasta / 'tenda.svg', composto, ponto.lattice, RenderSpec(labels=True),
              title='Triângulos tangentes')
    print("✅ tenda.svg")
    print("-" * 30)
    print(f"Figuras em {pasta.resolve()}")


if __name__ == "__main__":
    try:
        gerar_figuras(sys.argv[1] if len(sys.argv) > 1 else 'figuras')
    except CritLocusError as erro:
        print(f"❌ {type(erro).__name__}: {erro}")
        sys.exit(1)
