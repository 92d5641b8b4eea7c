"""
Bateria rápida de verificações numéricas (comando `selftest`).
"""

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from critlocus.analysis import box_dimension_param, embed_lattice
from critlocus.construct import build_construction, cantor_gaps, compare_deltas, verify_locus
from critlocus.critical import (
    LocusArc, compare_equivariance, critical_search, interleaving_counts, locus_parameterize,
    parameters_through,
)
from critlocus.dirichlet import dirichlet_solvable, flow_trajectory
from critlocus.errors import CritLocusError, ParallelogramWarning
from critlocus.geometry import Disc, HexagonDomain, LpBall, Parallelogram, angle_of
from critlocus.lattice import Lattice2, enumerate_nonzero, is_admissible

logger = logging.getLogger(__name__)

RAIZ3_2 = math.sqrt(3) / 2
GOLDEN = (1 + math.sqrt(5)) / 2


@dataclass
class Verificacao:
    nome: str
    ok: bool
    detalhe: str = ''


def _simetria_e_subaditividade():
    rng = np.random.default_rng(2024)
    x = rng.normal(size=(2000, 2))
    y = rng.normal(size=(2000, 2))
    for domain in (Disc(), Parallelogram(), HexagonDomain.regular(), LpBall(3.0)):
        gx = domain.gauge(x)
        if np.max(np.abs(gx - domain.gauge(-x)) / (1 + gx)) > 1e-12:
            return False, f'simetria falhou em {type(domain).__name__}'
        if np.any(domain.gauge(x + y) > gx + domain.gauge(y) + 1e-12):
            return False, f'subaditividade falhou em {type(domain).__name__}'
    return True, '4 domínios, 2000 amostras'


def _delta_disco():
    report = critical_search(Disc())
    return abs(report.delta_est - RAIZ3_2) < 1e-8, f'Δ = {report.delta_est:.12f}'


def _delta_quadrado():
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', ParallelogramWarning)
        report = critical_search(Parallelogram())
    ok = abs(report.delta_est - 1.0) < 1e-8 and report.parallelogram
    return ok, f'Δ = {report.delta_est:.12f}, razão de Minkowski {report.minkowski_ratio:.12f}'


def _delta_hexagono():
    hexagono = HexagonDomain.regular()
    report = critical_search(hexagono)
    ok = abs(4 * report.delta_est - hexagono.area()) < 1e-7 and len(report.clusters) == 1
    return ok, f'4Δ − V = {4 * report.delta_est - hexagono.area():.2e}, {len(report.clusters)} grupo(s)'


def _enumeracao():
    n = len(enumerate_nonzero(Lattice2((1, 0), (0, 1)), 2.5))
    hexagonal = Lattice2((1, 0), (0.5, RAIZ3_2))
    ok = n == 20 and is_admissible(hexagonal, Disc()) and not is_admissible(Lattice2((0.9, 0), (0, 0.9)), Disc())
    return ok, f'{n} pontos de Z² com |x| <= 2.5'


def _construcao():
    q = cantor_gaps(1)
    composto = build_construction(Disc(), q)
    resultado = verify_locus(composto, q, 300)
    if resultado.agreement_fraction != 1.0:
        return False, f'concordância {resultado.agreement_fraction:.3f}'
    for t in q.endpoints():
        ponto, _ = composto.arc.point_at(t)
        for x in ponto.hexagon():
            if np.max(np.abs(composto.boundary(angle_of(x)).point - x)) > 1e-9:
                return False, f'φ({t}) fora da fronteira de K'
    comparacao = compare_deltas(composto, grid_n=360)
    ok = comparacao.preserved and comparacao.monotone
    return ok, f'concordância 1, Δ(K) − Δ(H) = {comparacao.delta_composite - comparacao.delta_base:.1e}'


def _minkowski():
    # Covolume abaixo de V(K)/4: sempre há ponto não nulo no interior.
    rng = np.random.default_rng(7)
    dominios = (Disc(), HexagonDomain.regular(), LpBall(3.0))
    for _ in range(20):
        g = rng.normal(size=(2, 2))
        if abs(np.linalg.det(g)) < 0.1:
            continue
        for domain in dominios:
            escala = math.sqrt(0.99 * domain.area() / 4 / abs(np.linalg.det(g)))
            if is_admissible(Lattice2.from_matrix(escala * g), domain):
                return False, f'reticulado de covolume 0.99·V/4 admissível em {type(domain).__name__}'
    return True, f'{len(dominios)} domínios, covolume 0.99·V/4'


def _bolas_lp():
    detalhes = []
    for p in (1.5, 3.0):
        bola = LpBall(p)
        delta = critical_search(bola, grid_n=180).delta_est
        if not bola.area() / 4 - 1e-9 <= delta <= RAIZ3_2 * bola.circumradius() ** 2:
            return False, f'Δ(B_{p:g}) = {delta:.9f} fora de [V/4, (√3/2)R²]'
        detalhes.append(f'Δ(B_{p:g}) = {delta:.6f}')
    return True, ', '.join(detalhes)


def _equivariancia():
    g = [[1.5, 0.4], [0.2, 0.8]]
    resultado = compare_equivariance(Disc(), g, grid_n=90)
    return resultado.ok, f'Δ(gK) = {resultado.delta_image:.9f}, |det g|·Δ(K) = {resultado.expected:.9f}'


def _entrelacamento_e_unicidade():
    arco = LocusArc(Disc(), 0.0, math.pi / 3, 2 * math.pi / 3)
    rng = np.random.default_rng(11)
    for t1, t2 in rng.uniform(0.0, 1.0, size=(10, 2)):
        a, _ = arco.point_at(t1)
        b, _ = arco.point_at(t2)
        if interleaving_counts(a, b) != [1] * 6:
            return False, f'hexágonos de t = {t1:.4f} e {t2:.4f} não se entrelaçam'
    amostras = locus_parameterize(Disc(), 31, arc=arco)
    for theta in (0.5, 1.3, 2.9):
        t = (theta % (math.pi / 3)) * 3 / math.pi
        encontrados = parameters_through(Disc(), theta, samples=amostras, arc=arco)
        if len(encontrados) != 1 or abs(encontrados[0] - t) > 1e-9:
            return False, f'θ = {theta}: parâmetros {encontrados}'
    return True, '10 pares entrelaçados, 3 ângulos com parâmetro único'


def _mergulho():
    rng = np.random.default_rng(13)
    unimodulares = [np.array(u) for u in ([[2, 1], [1, 1]], [[1, 3], [0, 1]], [[0, -1], [1, 0]])]
    for _ in range(10):
        g = rng.normal(size=(2, 2))
        if abs(np.linalg.det(g)) < 0.1:
            continue
        referencia = embed_lattice(Lattice2.from_matrix(g))
        for u in unimodulares:
            if np.max(np.abs(embed_lattice(Lattice2.from_matrix(g @ u)) - referencia)) > 1e-9:
                return False, 'mergulho depende da base'
    return True, 'base canônica invariante por mudança unimodular'


def _dimensao():
    serie = box_dimension_param(cantor_gaps(8), 8)
    alvo = math.log(2) / math.log(3)
    ok = list(serie.counts) == [2 ** k for k in range(1, 9)] and abs(serie.slope - alvo) < 0.01
    return ok, f'inclinação {serie.slope:.5f} (ln2/ln3 = {alvo:.5f})'


def _dirichlet():
    solucao = dirichlet_solvable(math.sqrt(2), 0.1, 10)
    dourado = dirichlet_solvable(GOLDEN, 0.4 / 55, 55)
    ok = solucao.solvable and solucao.witness == (7, 5) and not dourado.solvable
    return ok, f'testemunha {solucao.witness}, dourado c=0.4 em T=55: {dourado.solvable}'


def _fluxo():
    amostras = flow_trajectory(GOLDEN, 5.0, 0.25)
    desvio = max(abs(a.lattice.covolume() - 1.0) for a in amostras)
    no_reticulado = all(a.lattice.contains(a.vector) for a in amostras)
    return desvio < 1e-12 and no_reticulado, f'{len(amostras)} amostras, |covolume − 1| <= {desvio:.1e}'


VERIFICACOES = [
    ('Simetria e subaditividade do calibre', _simetria_e_subaditividade),
    ('Enumeração e admissibilidade', _enumeracao),
    ('Δ(disco) = √3/2', _delta_disco),
    ('Δ(quadrado) = 1', _delta_quadrado),
    ('Hexágono: V = 4Δ', _delta_hexagono),
    ('Limite de Minkowski em reticulados aleatórios', _minkowski),
    ('Bolas Lp: V/4 <= Δ <= (√3/2)R²', _bolas_lp),
    ('Equivariância afim', _equivariancia),
    ('Entrelaçamento e unicidade no disco', _entrelacamento_e_unicidade),
    ('Mergulho independente da base', _mergulho),
    ('Construção com Cantor de nível 1', _construcao),
    ('Dimensão do Cantor de nível 8', _dimensao),
    ('Sistema de Dirichlet', _dirichlet),
    ('Fluxo diagonal unimodular', _fluxo),
]


def run_selftest(echo=print):
    """Executa as verificações e devolve a lista de resultados."""
    resultados = []
    for nome, funcao in VERIFICACOES:
        try:
            ok, detalhe = funcao()
        except CritLocusError as erro:
            ok, detalhe = False, f'{type(erro).__name__}: {erro}'
        resultados.append(Verificacao(nome, bool(ok), detalhe))
        echo(f"{'✅' if ok else '❌'} {nome}: {detalhe}")
    falhas = sum(not r.ok for r in resultados)
    if falhas:
        logger.error(f'selftest: {falhas} verificação(ões) falharam.')
    return resultados
