"""
Arquivo texto de domínio composto.

    # critlocus composite domain
    base: disc
    arc: <θ1> <θ2> <u0>
    resolution: <r>
    gap: <a> <b>
    gap: <a> <b>

Números com 17 algarismos significativos, de modo que salvar e carregar
reproduz as lacunas exatamente.
"""

import logging
from pathlib import Path

from critlocus.construct import ClosedSet01, build_construction
from critlocus.critical import LocusArc
from critlocus.errors import CritLocusError, DomainFileError

logger = logging.getLogger(__name__)

CABECALHO = '# critlocus composite domain'


def _num(x):
    return format(float(x), '.17g')


def dumps_domain(domain):
    linhas = [CABECALHO, f'base: {domain.base.to_spec()}']
    arc = domain.arc
    linhas.append(f'arc: {_num(arc.theta_start)} {_num(arc.theta_end)} {_num(arc.u_start)}')
    linhas.append(f'resolution: {_num(domain.q.resolution)}')
    linhas.extend(f'gap: {_num(a)} {_num(b)}' for a, b in domain.q.gaps)
    return '\n'.join(linhas) + '\n'


def save_domain(domain, path):
    path = Path(path)
    path.write_text(dumps_domain(domain), encoding='utf-8')
    logger.info(f'Domínio composto salvo em {path} ({len(domain.q)} lacuna(s)).')
    return path


def loads_domain(texto, origem='<texto>'):
    from critlocus.specs import parse_domain

    base = arc = None
    resolucao = 0.0
    lacunas = []
    for numero, linha in enumerate(texto.splitlines(), 1):
        linha = linha.strip()
        if not linha or linha.startswith('#'):
            continue
        chave, separador, valor = linha.partition(':')
        if not separador:
            raise DomainFileError(f'{origem}:{numero}: linha sem "chave: valor": {linha!r}')
        chave, valor = chave.strip(), valor.strip()
        try:
            if chave == 'base':
                base = parse_domain(valor)
            elif chave == 'arc':
                arc = tuple(float(v) for v in valor.split())
                if len(arc) != 3:
                    raise ValueError('arc exige três números')
            elif chave == 'resolution':
                resolucao = float(valor)
            elif chave == 'gap':
                a, b = (float(v) for v in valor.split())
                lacunas.append((a, b))
            else:
                raise DomainFileError(f'{origem}:{numero}: chave desconhecida {chave!r}.')
        except DomainFileError:
            raise
        except (ValueError, CritLocusError) as erro:
            raise DomainFileError(f'{origem}:{numero}: valor inválido ({erro}).') from None

    if base is None:
        raise DomainFileError(f'{origem}: falta a linha "base:".')
    try:
        q = ClosedSet01(tuple(lacunas), resolucao)
        arco = LocusArc(base, *arc) if arc else None
        return build_construction(base, q, arco)
    except DomainFileError:
        raise
    except CritLocusError as erro:
        raise DomainFileError(f'{origem}: {type(erro).__name__}: {erro}') from erro


def load_domain(path):
    path = Path(path)
    if not path.exists():
        raise DomainFileError(f'Arquivo de domínio não encontrado: {path}')
    return loads_domain(path.read_text(encoding='utf-8'), str(path))
