"""
Construção por triângulos tangentes.

A partir de um domínio base H estritamente convexo e de um fechado
Q ⊂ [0, 1], cola-se sobre cada lacuna (a, b) de Q o triângulo limitado
pelas tangentes em p(a), p(b) e pelo arco entre eles (e o seu antípoda).
Os reticulados críticos de H que sobrevivem como admissíveis no domínio
composto são exatamente os φ(t) com t ∈ Q.
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from critlocus.config import get_settings
from critlocus.critical import LocusArc, critical_arc, critical_search
from critlocus.errors import (
    CornerPoint, GapAdjusted, InvalidClosedSet, NonConvexResult, ParallelogramWarning,
    TangentIntersectionUnstable, UnsupportedDomain,
)
from critlocus.geometry import TWO_PI, ConvexDomain, Disc, angle_of, cross
from critlocus.lattice import is_admissible

logger = logging.getLogger(__name__)

LARGURA_MINIMA = 1e-7
PROFUNDIDADE_MAXIMA = 30


# ---------------------------------------------------------------------------
# Fechados de [0, 1]
# ---------------------------------------------------------------------------

def _avisar(mensagem):
    logger.warning(mensagem)
    warnings.warn(mensagem, GapAdjusted, stacklevel=3)


@dataclass(frozen=True, eq=False)
class ClosedSet01:
    """
    Q = [0, 1] menos uma união finita de intervalos abertos disjuntos.

    `resolution` é o comprimento dos pedaços da aproximação finita (0 quando
    as lacunas descrevem Q exatamente); caixas menores que isso não medem
    nada de Q.
    """
    gaps: tuple = ()
    resolution: float = 0.0

    def __post_init__(self):
        lacunas = tuple((float(a), float(b)) for a, b in self.gaps)
        for a, b in lacunas:
            if not (0.0 <= a < b <= 1.0):
                raise InvalidClosedSet(f'Lacuna ({a!r}, {b!r}) fora de [0, 1] ou vazia.')
        for (_, b0), (a1, _) in zip(lacunas, lacunas[1:]):
            if a1 < b0:
                raise InvalidClosedSet(f'Lacunas fora de ordem ou sobrepostas perto de {a1!r}.')
        object.__setattr__(self, 'gaps', lacunas)
        arr = np.array(lacunas, dtype=float).reshape(-1, 2)
        object.__setattr__(self, '_a', arr[:, 0])
        object.__setattr__(self, '_b', arr[:, 1])

    @classmethod
    def from_gaps(cls, gaps, resolution=0.0):
        """Ordena, recorta para [0, 1] (com aviso) e valida."""
        lacunas = []
        for a, b in sorted((float(a), float(b)) for a, b in gaps):
            if a < 0.0 or b > 1.0:
                _avisar(f'Lacuna ({a!r}, {b!r}) recortada para [0, 1].')
                a, b = max(a, 0.0), min(b, 1.0)
            if a >= b:
                _avisar(f'Lacuna ({a!r}, {b!r}) vazia após o recorte; descartada.')
                continue
            lacunas.append((a, b))
        return cls(tuple(lacunas), resolution)

    def __len__(self):
        return len(self.gaps)

    def gap_array(self):
        return np.column_stack([self._a, self._b])

    def _indice(self, t):
        return np.searchsorted(self._a, t, side='right') - 1

    def contains(self, t, tol=0.0):
        t = np.asarray(t, dtype=float)
        dentro = (t >= -tol) & (t <= 1.0 + tol)
        if not len(self.gaps):
            return dentro if t.ndim else bool(dentro)
        i = self._indice(t)
        ok = i >= 0
        j = np.where(ok, i, 0)
        na_lacuna = ok & (t > self._a[j] + tol) & (t < self._b[j] - tol)
        resultado = dentro & ~na_lacuna
        return resultado if t.ndim else bool(resultado)

    def distance(self, t):
        """Distância de t ∈ [0, 1] até Q."""
        t = float(t)
        if not len(self.gaps):
            return 0.0
        i = int(self._indice(t))
        if i < 0 or t >= self._b[i]:
            return 0.0
        a, b = self._a[i], self._b[i]
        if t <= a:
            return 0.0
        # Os extremos de uma lacuna sempre pertencem a Q.
        return float(min(t - a, b - t))

    def __contains__(self, t):
        return bool(self.contains(t))

    def components(self):
        """Componentes conexas [c, d] de Q (c == d para pontos isolados)."""
        extremos = [0.0] + [v for ab in self.gaps for v in ab] + [1.0]
        partes = []
        for c, d in zip(extremos[::2], extremos[1::2]):
            if c <= d:
                partes.append((c, d))
        return partes

    def endpoints(self):
        return sorted({v for c, d in self.components() for v in (c, d)})

    def to_spec(self):
        if not self.gaps:
            return 'full'
        return 'gaps:' + ','.join(f'{a!r}-{b!r}' for a, b in self.gaps)


def cantor_gaps(depth, ratio=Fraction(1, 3)):
    """
    Lacunas da aproximação de nível `depth` do Cantor que mantém, em cada
    etapa, os dois pedaços extremos de comprimento relativo `ratio`.

    As contas são feitas em racionais exatos e convertidas no final.
    """
    if depth < 0 or depth > PROFUNDIDADE_MAXIMA:
        raise InvalidClosedSet(f'Profundidade {depth} fora de [0, {PROFUNDIDADE_MAXIMA}].')
    r = Fraction(ratio).limit_denominator(10 ** 12) if isinstance(ratio, float) else Fraction(ratio)
    if not (0 < r < Fraction(1, 2)):
        raise InvalidClosedSet(f'Razão {float(r)!r} fora de (0, 1/2).')

    pedacos = [(Fraction(0), Fraction(1))]
    lacunas = []
    for _ in range(depth):
        proximos = []
        for inicio, comprimento in pedacos:
            filho = comprimento * r
            lacunas.append((inicio + filho, inicio + comprimento - filho))
            proximos.append((inicio, filho))
            proximos.append((inicio + comprimento - filho, filho))
        pedacos = proximos
    lacunas.sort()
    resolucao = float(r ** depth) if depth else 0.0
    return ClosedSet01(tuple((float(a), float(b)) for a, b in lacunas), resolucao)


# ---------------------------------------------------------------------------
# Triângulos tangentes e domínio composto
# ---------------------------------------------------------------------------

def _coeficientes(a, b):
    """Funcional c com c·a = c·b = 1 (reta por a e b)."""
    return np.linalg.solve(np.array([a, b]), np.ones(2))


@dataclass(frozen=True, eq=False)
class TangentTriangle:
    a: float
    b: float
    pa: np.ndarray
    pb: np.ndarray
    v: np.ndarray
    theta_a: float = 0.0
    theta_b: float = 0.0

    def negated(self):
        return TangentTriangle(self.a, self.b, -self.pa, -self.pb, -self.v,
                               self.theta_a + math.pi, self.theta_b + math.pi)

    def polygon_area(self):
        """Área do quadrilátero (0, pa, v, pb)."""
        return 0.5 * float(cross(self.pa, self.v) + cross(self.v, self.pb))


@dataclass(frozen=True, eq=False)
class CompositeDomain(ConvexDomain):
    """H ∪ ⋃ (T_i ∪ −T_i)."""
    base: ConvexDomain = None
    arc: LocusArc = None
    q: ClosedSet01 = field(default_factory=ClosedSet01)
    triangles: tuple = ()

    def __post_init__(self):
        setores = []
        for tri in self.triangles:
            for t in (tri, tri.negated()):
                c1, c2 = _coeficientes(t.pa, t.v), _coeficientes(t.v, t.pb)
                inicio = float(np.mod(t.theta_a, TWO_PI))
                fim = inicio + (t.theta_b - t.theta_a)
                if fim > TWO_PI:
                    setores.append((inicio, TWO_PI, c1, c2))
                    setores.append((0.0, fim - TWO_PI, c1, c2))
                else:
                    setores.append((inicio, fim, c1, c2))
        setores.sort(key=lambda x: x[0])
        object.__setattr__(self, '_inicio', np.array([x[0] for x in setores]))
        object.__setattr__(self, '_fim', np.array([x[1] for x in setores]))
        object.__setattr__(self, '_c1', np.array([x[2] for x in setores]).reshape(-1, 2))
        object.__setattr__(self, '_c2', np.array([x[3] for x in setores]).reshape(-1, 2))

    def gauge(self, x):
        x = np.asarray(x, dtype=float)
        valor = np.asarray(self.base.gauge(x), dtype=float)
        if not len(self._inicio):
            return float(valor) if valor.ndim == 0 else valor
        theta = angle_of(x)
        i = np.searchsorted(self._inicio, theta, side='right') - 1
        j = np.where(i >= 0, i, 0)
        no_setor = (i >= 0) & (theta <= self._fim[j])
        cadeia = np.maximum(np.sum(x * self._c1[j], axis=-1), np.sum(x * self._c2[j], axis=-1))
        valor = np.where(no_setor, cadeia, valor)
        return float(valor) if valor.ndim == 0 else valor

    def tangent_dir(self, theta):
        theta = float(theta)
        for tri in self.triangles:
            for t in (tri, tri.negated()):
                rel = np.mod(theta - t.theta_a, TWO_PI)
                largura = t.theta_b - t.theta_a
                if rel <= 0.0 or rel >= largura:
                    continue
                rel_v = np.mod(angle_of(t.v) - t.theta_a, TWO_PI)
                if abs(rel - rel_v) < 1e-12:
                    raise CornerPoint(f'θ = {theta:.12g} é vértice de um triângulo tangente.')
                lado = (t.v - t.pa) if rel < rel_v else (t.pb - t.v)
                return lado / np.linalg.norm(lado)
        return self.base.tangent_dir(theta)

    def breakpoints(self):
        angulos = []
        for tri in self.triangles:
            for t in (tri, tri.negated()):
                angulos.extend([t.theta_a, angle_of(t.v), t.theta_b])
        return np.sort(np.mod(np.array(angulos, dtype=float), TWO_PI))

    def area(self):
        extra = 0.0
        for tri in self.triangles:
            setor, _ = quad(lambda th: 0.5 * self.base.radial(th) ** 2, tri.theta_a, tri.theta_b,
                            epsabs=1e-14, epsrel=1e-12)
            extra += tri.polygon_area() - setor
        return self.base.area() + 2.0 * extra

    def circumradius(self):
        vertices = [np.linalg.norm(t.v) for t in self.triangles]
        return max([self.base.circumradius()] + vertices)


def _arco_padrao(base, report=None):
    if isinstance(base, Disc):
        # Reticulado hexagonal com p1 = (r, 0), p2 = r(1/2, √3/2).
        return LocusArc(base, 0.0, math.pi / 3, 2 * math.pi / 3)
    return critical_arc(base, report)


def _triangulo(base, arc, a, b):
    theta_a, theta_b = float(arc.angle(a)), float(arc.angle(b))
    ponto_a, ponto_b = base.boundary(theta_a), base.boundary(theta_b)
    pa, pb = ponto_a.point, ponto_b.point
    ta, tb = base.tangent_dir(ponto_a.theta), base.tangent_dir(ponto_b.theta)
    denominador = float(cross(ta, tb))
    if abs(denominador) < 1e-10:
        raise TangentIntersectionUnstable(
            f'Tangentes quase paralelas na lacuna ({a!r}, {b!r}): |ta × tb| = {abs(denominador):.3g}.')
    lam = float(cross(pb - pa, tb)) / denominador
    v = pa + lam * ta
    if not base.gauge(v) > 1.0:
        raise TangentIntersectionUnstable(f'Vértice da lacuna ({a!r}, {b!r}) não está fora de H.')
    return TangentTriangle(a, b, pa, pb, v, theta_a, theta_b)


def _verificar_convexidade(domain, n=4096):
    angulos = np.linspace(0.0, TWO_PI, n, endpoint=False)
    quebras = domain.breakpoints()
    angulos = np.unique(np.concatenate([angulos, quebras, quebras - 1e-7, quebras + 1e-7]))
    pontos = domain.boundary_point(angulos)
    medios = 0.5 * (pontos + np.roll(pontos, -1, axis=0))
    excesso = float(np.max(domain.gauge(medios))) - 1.0
    if excesso > 1e-9:
        raise NonConvexResult(f'Corda entre amostras vizinhas sai do domínio (excesso {excesso:.3g}).')


def build_construction(base=None, q=None, arc=None, report=None):
    """
    Cola os triângulos tangentes sobre as lacunas de Q ao longo do arco
    p1 → p2 de um reticulado crítico de H (e do arco antípoda).
    """
    base = base or Disc(tol_boundary=get_settings().tol_boundary)
    q = q if q is not None else ClosedSet01()
    if len(base.breakpoints()) or base.is_parallelogram():
        raise UnsupportedDomain(f'{type(base).__name__} não é estritamente convexo com fronteira C¹.')
    arc = arc or _arco_padrao(base, report)

    triangulos = []
    for a, b in q.gaps:
        if b - a < LARGURA_MINIMA:
            _avisar(f'Lacuna ({a!r}, {b!r}) mais estreita que {LARGURA_MINIMA:g}; descartada.')
            continue
        triangulos.append(_triangulo(base, arc, a, b))

    composto = CompositeDomain(base=base, arc=arc, q=q, triangles=tuple(triangulos),
                               tol_boundary=base.tol_boundary)
    if triangulos:
        _verificar_convexidade(composto)
    logger.info(f'Domínio composto com {len(triangulos)} triângulo(s) tangente(s).')
    return composto


# ---------------------------------------------------------------------------
# Verificação
# ---------------------------------------------------------------------------

@dataclass
class LocusVerification:
    agreement_fraction: float
    mismatches: list
    n_grid: int
    n_scored: int
    admissible: np.ndarray = field(repr=False, default=None)
    t: np.ndarray = field(repr=False, default=None)


def verify_locus(domain, q=None, n_grid=2000):
    """
    Compara, numa grade de t, a admissibilidade de φ(t) em K com t ∈ Q.

    Pontos a menos de 2/n_grid de um extremo de lacuna ficam fora da nota.
    """
    q = q if q is not None else domain.q
    ts = np.linspace(0.0, 1.0, n_grid)
    extremos = np.array([v for ab in q.gaps for v in ab])
    faixa = 2.0 / n_grid

    admissiveis = np.zeros(n_grid, dtype=bool)
    divergencias = []
    acertos = pontuados = 0
    for k, t in enumerate(ts):
        ponto, _ = domain.arc.point_at(t)
        admissiveis[k] = is_admissible(ponto.lattice, domain)
        esperado = q.distance(t) <= 1e-12
        if len(extremos) and np.min(np.abs(extremos - t)) < faixa:
            continue
        pontuados += 1
        if admissiveis[k] == esperado:
            acertos += 1
        else:
            divergencias.append((float(t), bool(admissiveis[k]), bool(esperado)))

    fracao = acertos / pontuados if pontuados else 1.0
    if divergencias:
        logger.warning(f'verify_locus: {len(divergencias)} divergência(s) em {pontuados} pontos.')
    return LocusVerification(fracao, divergencias, n_grid, pontuados, admissiveis, ts)


@dataclass
class DeltaComparison:
    delta_base: float
    delta_composite: float
    tolerance: float

    @property
    def preserved(self):
        return abs(self.delta_composite - self.delta_base) <= self.tolerance

    @property
    def monotone(self):
        """H ⊂ K implica Δ(H) <= Δ(K)."""
        return self.delta_composite >= self.delta_base - self.tolerance


def compare_deltas(domain, tolerance=1e-6, grid_n=None, refine_tol=None, base_report=None):
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', ParallelogramWarning)
        base = base_report or critical_search(domain.base, grid_n, refine_tol)
        composto = critical_search(domain, grid_n, refine_tol)
    return DeltaComparison(base.delta_est, composto.delta_est, tolerance)


def delta_preserved(domain, **kwargs):
    comparacao = compare_deltas(domain, **kwargs)
    if not comparacao.monotone:
        logger.error(f'Δ(K) = {comparacao.delta_composite:.12g} < Δ(H) = {comparacao.delta_base:.12g}')
    return comparacao.preserved and comparacao.monotone
