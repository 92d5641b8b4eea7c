"""
Leitura das strings de especificação aceitas pela linha de comando:
domínios, conjuntos Q, valores de α, famílias ψ, faixas de T e
reticulados literais.
"""

import math
import re
from dataclasses import replace
from fractions import Fraction

import numpy as np

from critlocus.config import get_settings
from critlocus.construct import ClosedSet01, cantor_gaps
from critlocus.errors import SpecSyntaxError
from critlocus.geometry import Affine, Disc, HexagonDomain, LpBall, Parallelogram
from critlocus.lattice import Lattice2

NUMERO = r'[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?'


def _floats(texto, quantidade, contexto):
    try:
        valores = [float(v) for v in texto.split(',')]
    except ValueError:
        raise SpecSyntaxError(f'{contexto}: números inválidos em {texto!r}.') from None
    if len(valores) != quantidade:
        raise SpecSyntaxError(f'{contexto}: esperados {quantidade} números, recebidos {len(valores)}.')
    return valores


def _parametro(parte, chave, contexto):
    prefixo = f'{chave}='
    if not parte.startswith(prefixo):
        raise SpecSyntaxError(f'{contexto}: esperado "{prefixo}...", recebido {parte!r}.')
    return parte[len(prefixo):]


def parse_matrix(texto, contexto='matriz'):
    """'a,b,c,d' -> [[a, b], [c, d]]."""
    return np.array(_floats(texto, 4, contexto)).reshape(2, 2)


def parse_domain(spec, settings=None):
    """Converte 'disc', 'square', 'hexagon:regular', 'affine:g=...:base=...' etc. num domínio."""
    return com_tolerancia(_dominio(spec), settings)


def com_tolerancia(domain, settings=None):
    """O mesmo domínio com a faixa de fronteira CRITLOCUS_TOL_BOUNDARY."""
    settings = settings or get_settings()
    if domain.tol_boundary != settings.tol_boundary:
        domain = replace(domain, tol_boundary=settings.tol_boundary)
    return domain


def _dominio(spec):
    spec = spec.strip()
    tipo, _, resto = spec.partition(':')
    try:
        if tipo == 'disc':
            return Disc(float(_parametro(resto, 'r', spec))) if resto else Disc()
        if tipo == 'square' and not resto:
            return Parallelogram()
        if tipo == 'parallelogram':
            return Parallelogram(g=parse_matrix(_parametro(resto, 'g', spec), spec))
        if tipo == 'hexagon':
            if resto == 'regular':
                return HexagonDomain.regular()
            v = _floats(_parametro(resto, 'v', spec), 6, spec)
            return HexagonDomain(v1=tuple(v[0:2]), v2=tuple(v[2:4]), v3=tuple(v[4:6]))
        if tipo == 'lp':
            return LpBall(float(_parametro(resto, 'p', spec)))
        if tipo == 'affine':
            matriz, separador, base = resto.partition(':base=')
            if not separador:
                raise SpecSyntaxError(f'{spec}: falta ":base=<spec>".')
            return Affine(g=parse_matrix(_parametro(matriz, 'g', spec), spec), base=_dominio(base))
        if tipo == 'composite':
            from critlocus.domain_file import load_domain
            return load_domain(_parametro(resto, 'file', spec))
    except ValueError as erro:
        raise SpecSyntaxError(f'{spec}: {erro}') from None
    raise SpecSyntaxError(
        f'Domínio desconhecido {spec!r}. Use disc, disc:r=, square, parallelogram:g=, '
        'hexagon:regular, hexagon:v=, lp:p=, affine:g=...:base=... ou composite:file=.')


def parse_q(spec):
    """'cantor:depth=d[:ratio=r]', 'full', 'endpoints' ou 'gaps:a-b,c-d'."""
    spec = spec.strip()
    if spec == 'full':
        return ClosedSet01()
    if spec == 'endpoints':
        return ClosedSet01(((0.0, 1.0),))
    tipo, _, resto = spec.partition(':')
    if tipo == 'cantor':
        partes = resto.split(':')
        try:
            profundidade = int(_parametro(partes[0], 'depth', spec))
            razao = Fraction(_parametro(partes[1], 'ratio', spec)) if len(partes) > 1 else Fraction(1, 3)
        except (ValueError, ZeroDivisionError):
            raise SpecSyntaxError(f'{spec}: profundidade ou razão inválida.') from None
        return cantor_gaps(profundidade, razao)
    if tipo == 'gaps':
        lacunas = []
        for item in filter(None, resto.split(',')):
            achado = re.fullmatch(f'({NUMERO})-({NUMERO})', item.strip())
            if not achado:
                raise SpecSyntaxError(f'{spec}: lacuna mal formada {item!r} (use a-b).')
            lacunas.append((float(achado.group(1)), float(achado.group(2))))
        return ClosedSet01.from_gaps(lacunas)
    raise SpecSyntaxError(f'Conjunto Q desconhecido {spec!r}. Use cantor:depth=, full, endpoints ou gaps:.')


ALPHAS = {
    'golden': (1 + math.sqrt(5)) / 2,
    'pi': math.pi,
    'e': math.e,
}


def parse_alpha(texto):
    texto = texto.strip()
    if texto in ALPHAS:
        return ALPHAS[texto]
    raiz = re.fullmatch(r'sqrt(\d+)', texto)
    if raiz:
        return math.sqrt(int(raiz.group(1)))
    try:
        return float(Fraction(texto))
    except (ValueError, ZeroDivisionError):
        raise SpecSyntaxError(f'alpha inválido {texto!r}: use sqrt2, golden, pi ou um decimal.') from None


def parse_psi(texto, c=None):
    """
    Família ψ(T): 'c/T' (constante de --c), '<número>/T' ou '1/(T log T)'.
    O valor é limitado a 1.
    """
    compacto = texto.replace(' ', '')
    if compacto == 'c/T':
        if c is None:
            raise SpecSyntaxError('ψ = c/T exige a constante c.')
        constante = float(c)
    elif compacto in ('1/(TlogT)', '1/(T*log(T))'):
        return lambda T: 1.0 if T <= math.e else min(1.0, 1.0 / (T * math.log(T)))
    else:
        achado = re.fullmatch(f'({NUMERO})/T', compacto)
        if not achado:
            raise SpecSyntaxError(f'ψ desconhecida {texto!r}: use c/T, <número>/T ou 1/(T log T).')
        constante = float(achado.group(1))
    if not constante > 0:
        raise SpecSyntaxError(f'Constante de ψ deve ser positiva (recebido {constante}).')
    return lambda T: min(1.0, constante / T)


def parse_t_range(texto):
    """'a:b:log[:n]' ou 'a:b:lin[:n]' (n = 50 por padrão)."""
    partes = texto.split(':')
    if len(partes) not in (3, 4) or partes[2] not in ('log', 'lin'):
        raise SpecSyntaxError(f'Faixa de T inválida {texto!r}: use a:b:log[:n].')
    try:
        inicio, fim = float(partes[0]), float(partes[1])
        n = int(partes[3]) if len(partes) == 4 else 50
    except ValueError:
        raise SpecSyntaxError(f'Faixa de T inválida {texto!r}.') from None
    if not (1.0 <= inicio <= fim) or n < 1:
        raise SpecSyntaxError(f'Faixa de T inválida {texto!r}: exige 1 <= a <= b e n >= 1.')
    if partes[2] == 'log':
        return np.geomspace(inicio, fim, n)
    return np.linspace(inicio, fim, n)


def parse_lattice(texto):
    """'lattice:v1x,v1y,v2x,v2y'."""
    tipo, _, resto = texto.strip().partition(':')
    if tipo != 'lattice':
        raise SpecSyntaxError(f'Reticulado literal deve começar com "lattice:" (recebido {texto!r}).')
    v = _floats(resto, 4, texto)
    return Lattice2(v[0:2], v[2:4])
