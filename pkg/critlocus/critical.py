"""
Determinante crítico e lugar crítico via hexágonos inscritos.

Para cada ângulo s na fronteira procura-se o companheiro u em (s, s+π)
tal que p(s) + p(u) também está na fronteira; o reticulado gerado por
p(s) e p(u) é sempre admissível, e o mínimo de det(p(s), p(u)) sobre s
é o determinante crítico.
"""

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect, brentq, minimize_scalar

from critlocus.config import get_settings
from critlocus.errors import (
    BracketFailure, NotIrreducible, ParallelogramWarning, ParameterError, UnsupportedDomain,
)
from critlocus.geometry import TWO_PI, Affine, angle_of, cross
from critlocus.lattice import Lattice2, is_admissible

logger = logging.getLogger(__name__)

N_VARREDURA = 256
EPS_RAIZ = 1e-12
TOL_RAIZ = 1e-9
TOL_MESMO_RETICULADO = 1e-6
PASSO_PLANO = 1e-7


# ---------------------------------------------------------------------------
# Companheiro do hexágono inscrito
# ---------------------------------------------------------------------------

def _residuo(domain, p1, u):
    return np.asarray(domain.gauge(p1 + domain.boundary_point(u))) - 1.0


def _fronteira(predicado, lo, hi):
    """Ponto de troca de um predicado verdadeiro em lo e falso em hi."""
    degrau = lambda x: 1.0 if predicado(x) else -1.0  # noqa: E731
    return bisect(degrau, lo, hi, xtol=1e-14, maxiter=200)


def _raiz(residuo, lo, hi):
    """Raiz de residuo em [lo, hi], com residuo(lo) > EPS_RAIZ e residuo(hi) <= EPS_RAIZ."""
    if residuo(hi) >= 0.0:
        return hi
    return brentq(residuo, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)


def _plano(residuo, u, h=PASSO_PLANO):
    """O resíduo se anula num intervalo em volta de u (lado reto de um polígono)?"""
    return abs(residuo(u - h)) <= EPS_RAIZ or abs(residuo(u + h)) <= EPS_RAIZ


def _varredura(domain, s, n_scan):
    p1 = domain.boundary_point(s)
    us = s + math.pi * np.arange(1, n_scan) / n_scan
    f = _residuo(domain, p1, us)
    nao_positivos = np.flatnonzero(f <= EPS_RAIZ)
    if not len(nao_positivos):
        raise BracketFailure(f'Sem mudança de sinal em (s, s+π) para s = {s:.12g}.')
    return p1, us, f, nao_positivos[0]


def companion_interval(domain, s, n_scan=N_VARREDURA):
    """
    Menor e maior raiz de f(u) = gauge(p(s) + p(u)) − 1 em (s, s+π).

    Para domínios estritamente convexos os dois valores coincidem; em
    domínios com lados retos f pode se anular num intervalo, e aí os
    extremos são localizados pela troca de sinal de |f| > EPS_RAIZ.
    """
    s = float(s)
    p1, us, f, i = _varredura(domain, s, n_scan)
    residuo = lambda u: float(_residuo(domain, p1, u))  # noqa: E731
    u = _raiz(residuo, s if i == 0 else us[i - 1], us[i])
    if not _plano(residuo, u):
        return u, u

    positivo = lambda u: residuo(u) > EPS_RAIZ  # noqa: E731
    negativo = lambda u: residuo(u) < -EPS_RAIZ  # noqa: E731
    u_min = _fronteira(positivo, s if i == 0 else us[i - 1], us[i])
    nao_negativos = np.flatnonzero(f >= -EPS_RAIZ)
    j = nao_negativos[-1] if len(nao_negativos) else -1
    lo = s if j < 0 else us[j]
    hi = s + math.pi if j == len(us) - 1 else us[j + 1]
    u_max = _fronteira(lambda u: not negativo(u), lo, hi)
    return u_min, max(u_min, u_max)


def solve_companion(domain, s, near=None, n_scan=N_VARREDURA):
    """
    Companheiro u ∈ (s, s+π) com p(s) + p(u) na fronteira.

    Sem semente devolve a menor raiz. Com `near` a raiz é procurada
    primeiro numa vizinhança da semente (continuação ao longo do lugar).
    """
    s = float(s)
    p1 = domain.boundary_point(s)
    residuo = lambda u: float(_residuo(domain, p1, u))  # noqa: E731

    u = lo = None
    if near is not None:
        passo = math.pi / n_scan
        for _ in range(8):
            lo = max(s, near - passo)
            hi = min(s + math.pi, near + passo)
            if residuo(lo) > EPS_RAIZ and residuo(hi) <= EPS_RAIZ:
                u = _raiz(residuo, lo, hi)
                break
            passo *= 2
    if u is None:
        _, us, _, i = _varredura(domain, s, n_scan)
        lo = s if i == 0 else us[i - 1]
        u = _raiz(residuo, lo, us[i])
    if abs(residuo(u - PASSO_PLANO)) <= EPS_RAIZ:
        u = _fronteira(lambda x: residuo(x) > EPS_RAIZ, lo, u)

    if abs(residuo(u)) > TOL_RAIZ:
        raise BracketFailure(f'Raiz imprecisa em s = {s:.12g}: |f(u)| = {abs(residuo(u)):.3g}.')
    return u


@dataclass(frozen=True, eq=False)
class HexagonCandidate:
    """Par (p1, p2) na fronteira com p3 = p1 + p2 também na fronteira."""
    s: float
    u: float
    p1: np.ndarray
    p2: np.ndarray

    @classmethod
    def from_angles(cls, domain, s, u):
        return cls(s=float(s), u=float(u), p1=domain.boundary_point(float(s)),
                   p2=domain.boundary_point(float(u)))

    @property
    def p3(self):
        return self.p1 + self.p2

    @property
    def lattice(self):
        return Lattice2(self.p1, self.p2)

    @property
    def covolume(self):
        return float(cross(self.p1, self.p2))

    def hexagon(self):
        """Os seis pontos do reticulado na fronteira, em ordem anti-horária."""
        return np.array([self.p1, self.p3, self.p2, -self.p1, -self.p3, -self.p2])


# ---------------------------------------------------------------------------
# Busca do determinante crítico
# ---------------------------------------------------------------------------

@dataclass
class MinimizerCluster:
    representative: HexagonCandidate
    size: int = 1
    continuum: bool = False


@dataclass
class CriticalReport:
    delta_est: float
    minimizers: list
    grid_n: int
    refine_tol: float
    clusters: list = field(default_factory=list)
    parallelogram: bool = False
    area: float = float('nan')
    n_inadmissible: int = 0

    @property
    def minkowski_ratio(self):
        """Δ / (V/4); vale 1 exatamente para paralelogramos e hexágonos."""
        return self.delta_est / (self.area / 4.0)

    @property
    def packing_density(self):
        return self.area / (4.0 * self.delta_est)

    @property
    def best(self):
        return min(self.minimizers, key=lambda c: c.covolume)


def _candidatos_em(domain, s, extremos):
    if extremos:
        u_min, u_max = companion_interval(domain, s)
        angulos = [u_min] if u_max - u_min <= 1e-9 else [u_min, u_max]
    else:
        angulos = [solve_companion(domain, s)]
    return [HexagonCandidate.from_angles(domain, s, u) for u in angulos]


def _avaliar_lote(domain, s_values, extremos, cap):
    resultado = []
    for s in s_values:
        candidatos = []
        for c in _candidatos_em(domain, s, extremos):
            if is_admissible(c.lattice, domain, cap):
                candidatos.append(c)
        resultado.append(candidatos)
    return resultado


def _grade(domain, grid_n):
    s = np.linspace(0.0, math.pi, grid_n, endpoint=False)
    quebras = np.mod(domain.breakpoints(), math.pi)
    s = np.concatenate([s, quebras])
    s = np.sort(s)
    manter = np.concatenate([[True], np.diff(s) > 1e-12])
    return s[manter]


def _runs_ciclicos(indices, n):
    """Agrupa índices ordenados em sequências consecutivas módulo n."""
    if not len(indices):
        return []
    runs = [[indices[0]]]
    for i in indices[1:]:
        if i == runs[-1][-1] + 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == n - 1:
        runs[0] = runs.pop() + runs[0]
    return runs


def _objetivo(domain, extremos):
    def covolume_em(s):
        try:
            return min(c.covolume for c in _candidatos_em(domain, s, extremos))
        except BracketFailure:
            return math.inf
    return covolume_em


def critical_search(domain, grid_n=None, refine_tol=None, *, settings=None):
    """
    Estima Δ(K) varrendo s numa grade de [0, π) e refinando os mínimos locais.

    Candidatos com covolume a menos de refine_tol do mínimo são agrupados:
    sequências contíguas da grade formam uma família contínua, e grupos que
    geram o mesmo reticulado são fundidos.
    """
    settings = (settings or get_settings()).com(grid_n=grid_n, refine_tol=refine_tol)
    grid_n, refine_tol = settings.grid_n, settings.refine_tol
    if grid_n < 8:
        raise ParameterError(f'grid_n deve ser >= 8 (recebido {grid_n}).')

    s_grade = _grade(domain, grid_n)
    n = len(s_grade)
    extremos = len(domain.breakpoints()) > 0
    n_lotes = max(1, min(settings.threads, n // 16))
    lotes = np.array_split(s_grade, n_lotes)
    logger.debug(f'critical_search: {n} ângulos em {n_lotes} lote(s), extremos={extremos}')

    with ThreadPoolExecutor(max_workers=n_lotes) as executor:
        partes = executor.map(lambda lote: _avaliar_lote(domain, lote, extremos,
                                                         settings.enumeration_cap), lotes)
        por_angulo = [c for parte in partes for c in parte]

    inadmissiveis = sum(1 for c in por_angulo if not c)
    valores = np.array([min((c.covolume for c in cs), default=math.inf) for cs in por_angulo])
    if not np.any(np.isfinite(valores)):
        raise BracketFailure('Nenhum candidato admissível na grade.')

    # Mínimos locais (com tolerância para platôs numéricos)
    folga = 1e-12 * max(1.0, float(np.min(valores)))
    anterior, seguinte = np.roll(valores, 1), np.roll(valores, -1)
    minimos = np.flatnonzero((valores <= anterior + folga) & (valores <= seguinte + folga))
    runs_minimos = _runs_ciclicos(list(minimos), n)

    objetivo = _objetivo(domain, extremos)
    refinados = []
    for run in runs_minimos:
        # Platôs já estão no valor exato; só mínimos isolados são refinados.
        if len(run) > 2:
            continue
        centro = run[len(run) // 2]
        lo = s_grade[centro - 1] if centro > 0 else s_grade[-1] - math.pi
        hi = s_grade[centro + 1] if centro < n - 1 else s_grade[0] + math.pi
        res = minimize_scalar(objetivo, bounds=(lo, hi), method='bounded',
                              options={'xatol': refine_tol, 'maxiter': 80})
        if res.fun < valores[centro]:
            candidatos = _candidatos_em(domain, res.x, extremos)
            melhor = min(candidatos, key=lambda c: c.covolume)
            refinados.append((run, melhor))

    delta = min([float(np.min(valores))] + [c.covolume for _, c in refinados])
    tol = max(refine_tol, 1e-9) * max(1.0, delta)

    # Grupos: sequências contíguas da grade perto do mínimo
    selecionados = np.flatnonzero(valores <= delta + tol)
    grupos = []
    membros = []
    for run in _runs_ciclicos(list(selecionados), n):
        cands = [min(por_angulo[i], key=lambda c: c.covolume) for i in run]
        representante = min(cands, key=lambda c: c.s % math.pi)
        grupos.append((set(run), MinimizerCluster(representante, len(cands), len(run) > 1)))
        membros.extend(cands)
    for run, candidato in refinados:
        if candidato.covolume > delta + tol:
            continue
        membros.append(candidato)
        for indices, grupo in grupos:
            if indices & set(run):
                grupo.size += 1
                break
        else:
            grupos.append((set(run), MinimizerCluster(candidato)))

    # Fusão por igualdade de reticulado. Perto de um mínimo isolado o covolume
    # é quadrático em s, então candidatos a refine_tol do mínimo distam até
    # ~√refine_tol em s.
    tol_fusao = max(TOL_MESMO_RETICULADO, 10.0 * math.sqrt(refine_tol))
    clusters = []
    for _, grupo in grupos:
        for existente in clusters:
            if existente.representative.lattice.same_lattice(grupo.representative.lattice,
                                                             tol=tol_fusao):
                existente.size += grupo.size
                existente.continuum = existente.continuum or grupo.continuum
                break
        else:
            clusters.append(grupo)

    paralelogramo = domain.is_parallelogram()
    if paralelogramo:
        mensagem = ('Paralelogramo: os reticulados críticos formam duas famílias de '
                    'cisalhamento; apenas uma testemunha é reportada.')
        logger.warning(mensagem)
        warnings.warn(mensagem, ParallelogramWarning, stacklevel=2)
        testemunha = min(membros, key=lambda c: c.covolume)
        membros = [testemunha]
        clusters = [MinimizerCluster(testemunha, 1, True)]

    membros.sort(key=lambda c: c.s)
    logger.info(f'Δ ≈ {delta:.15g} ({len(clusters)} grupo(s), {len(membros)} minimizador(es))')
    return CriticalReport(delta_est=delta, minimizers=membros, grid_n=grid_n,
                          refine_tol=refine_tol, clusters=clusters, parallelogram=paralelogramo,
                          area=domain.area(), n_inadmissible=inadmissiveis)


def packing_density(domain, report=None):
    """Densidade do empacotamento reticulado mais denso por translados de K."""
    report = report or critical_search(domain)
    return domain.area() / (4.0 * report.delta_est)


def square_critical_family(axis, t):
    """Reticulados críticos do quadrado [-1,1]²: cisalhamentos horizontais ou verticais."""
    if axis == 'x':
        return Lattice2((1.0, 0.0), (float(t), 1.0))
    if axis == 'y':
        return Lattice2((1.0, float(t)), (0.0, 1.0))
    raise ParameterError(f"Eixo deve ser 'x' ou 'y' (recebido {axis!r}).")


# ---------------------------------------------------------------------------
# Equivariância afim
# ---------------------------------------------------------------------------

@dataclass
class EquivarianceResult:
    delta_base: float
    delta_image: float
    det_g: float
    images_admissible: bool
    covolumes_match: bool
    tolerance: float

    @property
    def expected(self):
        return abs(self.det_g) * self.delta_base

    @property
    def delta_matches(self):
        return abs(self.delta_image - self.expected) <= self.tolerance

    @property
    def ok(self):
        return self.delta_matches and self.images_admissible and self.covolumes_match


def compare_equivariance(domain, g, *, grid_n=None, refine_tol=None, settings=None):
    g = np.asarray(g, dtype=float).reshape(2, 2)
    imagem = Affine(g=g, base=domain)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', ParallelogramWarning)
        base = critical_search(domain, grid_n, refine_tol, settings=settings)
        transformado = critical_search(imagem, grid_n, refine_tol, settings=settings)
    det_g = float(np.linalg.det(g))
    tol = max(1e-7, 10 * base.refine_tol) * max(1.0, abs(det_g) * base.delta_est)

    admissiveis, covolumes = True, True
    for grupo in base.clusters:
        reticulado = grupo.representative.lattice.transformed(g)
        admissiveis = admissiveis and is_admissible(reticulado, imagem)
        esperado = abs(det_g) * grupo.representative.covolume
        covolumes = covolumes and abs(reticulado.covolume() - esperado) <= tol
    return EquivarianceResult(base.delta_est, transformado.delta_est, det_g,
                              admissiveis, covolumes, tol)


def equivariance_check(domain, g, **kwargs):
    resultado = compare_equivariance(domain, g, **kwargs)
    if not resultado.ok:
        logger.warning(f'Equivariância falhou: Δ(gK) = {resultado.delta_image:.12g}, '
                       f'esperado {resultado.expected:.12g}')
    return resultado.ok


# ---------------------------------------------------------------------------
# Parametrização do lugar crítico
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocusPoint:
    t: float
    p: np.ndarray = field(compare=False)
    q: np.ndarray = field(compare=False)

    @property
    def lattice(self):
        return Lattice2(self.p, self.q)

    @property
    def covolume(self):
        return float(cross(self.p, self.q))

    def hexagon(self):
        r = self.q - self.p
        return np.array([self.p, self.q, r, -self.p, -self.q, -r])


@dataclass(frozen=True, eq=False)
class LocusArc:
    """Arco fechado da fronteira de p1 a p2, dois pontos vizinhos de um reticulado crítico."""
    domain: object
    theta_start: float
    theta_end: float
    u_start: float

    def angle(self, t):
        return self.theta_start + np.asarray(t, dtype=float) * (self.theta_end - self.theta_start)

    def p(self, t):
        return self.domain.boundary_point(self.angle(t))

    def point_at(self, t, near=None):
        s = float(self.angle(t))
        u = solve_companion(self.domain, s, near=near)
        p = self.domain.boundary_point(s)
        return LocusPoint(t=float(t), p=p, q=p + self.domain.boundary_point(u)), u


def critical_arc(domain, report=None):
    if domain.is_parallelogram():
        raise UnsupportedDomain('Paralelogramos têm famílias contínuas de reticulados críticos.')
    report = report or critical_search(domain)
    candidato = report.clusters[0].representative
    theta1 = float(np.mod(candidato.s, TWO_PI))
    theta2 = theta1 + float(np.mod(angle_of(candidato.p3) - theta1, TWO_PI))
    u = theta1 + float(np.mod(candidato.u - candidato.s, TWO_PI))
    return LocusArc(domain, theta1, theta2, u)


def _exigir_unicidade(domain, s, u, delta=1e-7):
    p1 = domain.boundary_point(s)
    antes = float(_residuo(domain, p1, u - delta))
    depois = float(_residuo(domain, p1, u + delta))
    if not (antes > EPS_RAIZ and depois < -EPS_RAIZ):
        raise NotIrreducible(f'Companheiro não é único em s = {s:.12g} '
                             f'(f(u−δ) = {antes:.3g}, f(u+δ) = {depois:.3g}).')


def locus_parameterize(domain, n_samples, *, assume_irreducible=False, arc=None, report=None):
    """
    Amostra φ(t) = [p(t) q(t)]Z² para t numa grade uniforme de [0, 1].

    q(t) = p(t) + p(u(t)) é o ponto do reticulado que segue p(t) no sentido
    anti-horário; o companheiro é continuado a partir do valor anterior.
    """
    if domain.is_parallelogram():
        raise UnsupportedDomain('Paralelogramos têm famílias contínuas de reticulados críticos.')
    if not (assume_irreducible or domain.known_irreducible()):
        raise NotIrreducible(f'{type(domain).__name__} não é sabidamente irredutível; '
                             'use assume_irreducible para prosseguir.')
    if n_samples < 2:
        raise ParameterError(f'n_samples deve ser >= 2 (recebido {n_samples}).')

    arc = arc or critical_arc(domain, report)
    pontos = []
    u = arc.u_start
    s_anterior = arc.theta_start
    for t in np.linspace(0.0, 1.0, n_samples):
        s = float(arc.angle(t))
        ponto, u = arc.point_at(t, near=u + (s - s_anterior))
        _exigir_unicidade(domain, s, u)
        pontos.append(ponto)
        s_anterior = s

    if not locus_closes(pontos):
        logger.warning('φ(1) não coincide com φ(0) como reticulado.')
    return pontos


def locus_closes(points, tol=TOL_MESMO_RETICULADO):
    return points[0].lattice.same_lattice(points[-1].lattice, tol=tol)


def _angulos_mod_pi(ponto):
    """Ângulos (mod π) dos três pontos p, q, q−p."""
    return np.mod(angle_of(np.array([ponto.p, ponto.q, ponto.q - ponto.p])), math.pi)


def _diferenca(a, b):
    """a − b reduzido a (−π/2, π/2]."""
    return (a - b + math.pi / 2) % math.pi - math.pi / 2


def parameters_through(domain, theta, *, samples, arc=None):
    """
    Parâmetros t ∈ [0, 1) cujo reticulado φ(t) passa pelo ponto de ângulo θ.

    `samples` (de locus_parameterize) serve de grade para isolar as raízes,
    que depois são refinadas com brentq.
    """
    arc = arc or critical_arc(domain)
    alvo = float(np.mod(theta, math.pi))
    ts = np.array([p.t for p in samples])
    diferencas = np.array([_diferenca(_angulos_mod_pi(p), alvo) for p in samples])

    def h(t, j):
        ponto, _ = arc.point_at(t)
        return _diferenca(_angulos_mod_pi(ponto)[j], alvo)

    raizes = []
    for j in range(3):
        d = diferencas[:, j]
        for i in range(len(ts) - 1):
            a, b = d[i], d[i + 1]
            if abs(a - b) > math.pi / 4:
                continue
            if a == 0.0:
                raizes.append(ts[i])
            elif a * b < 0:
                raizes.append(brentq(h, ts[i], ts[i + 1], args=(j,), xtol=1e-13))
    if len(ts) and abs(diferencas[-1]).min() == 0.0:
        raizes.append(ts[-1])

    unicas = []
    for t in sorted(float(np.mod(r, 1.0)) for r in raizes):
        if not any(min(abs(t - v), 1 - abs(t - v)) < 1e-9 for v in unicas):
            unicas.append(t)
    return unicas


def interleaving_counts(a, b):
    """Quantos pontos do hexágono de b caem em cada arco aberto entre pontos vizinhos de a."""
    angulos_a = np.sort(angle_of(a.hexagon()))
    angulos_b = angle_of(b.hexagon())
    contagens = []
    for k in range(len(angulos_a)):
        ini = angulos_a[k]
        largura = np.mod(angulos_a[(k + 1) % len(angulos_a)] - ini, TWO_PI)
        rel = np.mod(angulos_b - ini, TWO_PI)
        contagens.append(int(np.sum((rel > 1e-12) & (rel < largura - 1e-12))))
    return contagens
