"""
Dimensão de contagem de caixas do conjunto de parâmetros Q e do lugar
crítico mergulhado em R⁴.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from critlocus.errors import ParameterError, ResolutionExceeded

logger = logging.getLogger(__name__)

# Desloca a grade de caixas para longe de coordenadas "redondas" (1, 1/2, ...).
DESLOCAMENTO = 0.318309886


@dataclass
class BoxCountSeries:
    scales: np.ndarray
    counts: np.ndarray
    slope: float
    r_squared: float
    fit_from: int = 0

    def rows(self):
        return [(float(e), int(n)) for e, n in zip(self.scales, self.counts)]


def _ajustar(escalas, contagens):
    """Reta de log N contra log(1/ε), descartando as duas escalas mais grossas."""
    inicio = 2 if len(escalas) > 3 else 0
    x = np.log(1.0 / np.asarray(escalas[inicio:], dtype=float))
    y = np.log(np.asarray(contagens[inicio:], dtype=float))
    if len(x) < 2:
        return 0.0, 1.0, inicio
    inclinacao, intercepto = np.polyfit(x, y, 1)
    residuo = y - (inclinacao * x + intercepto)
    total = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if total == 0.0 else 1.0 - float(np.sum(residuo ** 2)) / total
    return float(inclinacao), r2, inicio


def _ajustar_inteiro(x):
    r = np.round(x)
    return np.where(np.abs(x - r) < 1e-9 * np.maximum(1.0, np.abs(x)), r, x)


def count_boxes(q, eps):
    """
    Caixas [jε, (j+1)ε] usadas por Q: componentes não degeneradas contam as
    caixas cujo interior encontram; pontos isolados contam a caixa que os contém.
    """
    n_caixas = int(math.ceil(1.0 / eps - 1e-9))
    comps = np.array(q.components(), dtype=float).reshape(-1, 2)
    c, d = comps[:, 0], comps[:, 1]
    lo = np.floor(_ajustar_inteiro(c / eps)).astype(np.int64)
    hi = np.where(c < d, np.ceil(_ajustar_inteiro(d / eps)).astype(np.int64) - 1, lo)
    lo = np.clip(lo, 0, n_caixas - 1)
    hi = np.clip(np.maximum(hi, lo), 0, n_caixas - 1)

    # União de intervalos inteiros [lo, hi]
    ordem = np.argsort(lo, kind='stable')
    total, fim = 0, -1
    for a, b in zip(lo[ordem], hi[ordem]):
        if b <= fim:
            continue
        total += b - max(a, fim + 1) + 1
        fim = b
    return int(total)


def box_dimension_param(q, k_max, scale=1 / 3):
    """Contagem de caixas de lado scale^k (k = 1..k_max) sobre Q ⊂ [0, 1]."""
    if k_max < 1:
        raise ParameterError(f'k_max deve ser >= 1 (recebido {k_max}).')
    if not 0.0 < scale < 1.0:
        raise ParameterError(f'Razão de escala deve estar em (0, 1) (recebido {scale}).')
    escalas = scale ** np.arange(1, k_max + 1, dtype=float)
    if q.resolution and escalas[-1] < q.resolution * (1 - 1e-9):
        raise ResolutionExceeded(
            f'Caixa {escalas[-1]:.3g} menor que a resolução {q.resolution:.3g} da aproximação de Q.')
    contagens = np.array([count_boxes(q, eps) for eps in escalas])
    inclinacao, r2, inicio = _ajustar(escalas, contagens)
    return BoxCountSeries(escalas, contagens, inclinacao, r2, inicio)


def embed_lattice(lattice):
    """(w1.x, w1.y, w2.x, w2.y) da base canônica."""
    canonica = lattice.canonical()
    return np.concatenate([canonica.v1, canonica.v2])


def sample_locus(arc, q, n_samples):
    """Parâmetros t = i/n_samples em Q e os respectivos pontos mergulhados."""
    ts = np.arange(n_samples + 1) / n_samples
    ts = ts[q.contains(ts, tol=1e-12)]
    pontos = np.array([embed_lattice(arc.point_at(t)[0].lattice) for t in ts]).reshape(-1, 4)
    return ts, pontos


def _espacamento(q, ts, pontos):
    """Maior distância entre amostras vizinhas da mesma componente de Q."""
    if len(ts) < 2:
        return 0.0
    medios = 0.5 * (ts[:-1] + ts[1:])
    mesma = np.array([q.distance(m) == 0.0 for m in medios])
    if not np.any(mesma):
        return 0.0
    saltos = np.linalg.norm(np.diff(pontos, axis=0), axis=1)[mesma]
    # Empates da redução (|w1| = |w2|) trocam a base canônica de uma vez só;
    # esses saltos não medem o espaçamento da amostra.
    tipico = float(np.median(saltos))
    continuos = saltos[saltos <= 10.0 * tipico]
    if len(continuos) < len(saltos):
        logger.debug(f'_espacamento: {len(saltos) - len(continuos)} salto(s) de empate ignorado(s)')
    return float(np.max(continuos))


def box_dimension_locus(domain, q=None, n_samples=3 ** 8, k_max=None, arc=None):
    """
    Contagem de caixas diádicas em R⁴ do lugar {φ(t) : t ∈ Q}, com φ(t)
    amostrado em t = i/n_samples.
    """
    q = q if q is not None else domain.q
    arc = arc or domain.arc
    ts, pontos = sample_locus(arc, q, n_samples)
    espacamento = _espacamento(q, ts, pontos)
    if k_max is None:
        # Nas três escalas mais finas as caixas ainda resolvem as amostras uma a uma.
        k_max = int(math.floor(-math.log2(espacamento))) - 3 if espacamento > 0 else 10
        k_max = max(k_max, 1)
    escalas = 2.0 ** -np.arange(1, k_max + 1, dtype=float)
    if escalas[-1] < espacamento * (1 - 1e-9):
        raise ResolutionExceeded(
            f'Caixa {escalas[-1]:.3g} menor que o espaçamento {espacamento:.3g} das amostras.')
    logger.debug(f'box_dimension_locus: {len(ts)} amostras, k_max={k_max}')

    contagens = np.array([len(np.unique(np.floor(pontos / eps + DESLOCAMENTO), axis=0))
                          for eps in escalas])
    inclinacao, r2, inicio = _ajustar(escalas, contagens)
    return BoxCountSeries(escalas, contagens, inclinacao, r2, inicio)
