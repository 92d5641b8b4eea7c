"""
Aproximação diofantina: frações contínuas, solubilidade do sistema de
Dirichlet |αq − p| <= ψ(T), |q| <= T, e a trajetória g_t·u_α·Z² do fluxo
diagonal.
"""

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from critlocus.config import get_settings
from critlocus.errors import ParameterError, PrecisionExhausted
from critlocus.lattice import Lattice2, first_minimum, gauss_reduce

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
TOL_RACIONAL = 1e-9
LIMITE_PRECISAO = 1e-2
LIMITE_FORCA_BRUTA = 100_000


# ---------------------------------------------------------------------------
# Frações contínuas
# ---------------------------------------------------------------------------

@dataclass
class CFExpansion:
    alpha: float
    partial_quotients: list
    convergents: list
    truncated: bool = False
    terminated: bool = False

    @property
    def denominators(self):
        return [q for _, q in self.convergents]


def continued_fraction(alpha, n_terms):
    """
    Algoritmo do piso em ponto flutuante, com convergentes pela recorrência
    p_k = a_k p_{k−1} + p_{k−2} (idem para q).

    Para quando α é racional à precisão da máquina ou quando q_k²·ε já
    compromete o próximo quociente; nesse caso a expansão volta truncada.
    """
    if n_terms < 1:
        raise ParameterError(f'n_terms deve ser >= 1 (recebido {n_terms}).')
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ParameterError(f'alpha deve ser finito (recebido {alpha!r}).')

    quocientes, convergentes = [], []
    p_ant, p = 0, 1
    q_ant, q = 1, 0
    x = alpha
    truncada = terminou = False
    while True:
        inteiro = round(x)
        if abs(x - inteiro) <= TOL_RACIONAL * max(1.0, abs(x)):
            a, resto = int(inteiro), 0.0
        else:
            a = math.floor(x)
            resto = x - a
        quocientes.append(a)
        p_ant, p = p, a * p + p_ant
        q_ant, q = q, a * q + q_ant
        convergentes.append((p, q))

        if resto == 0.0:
            terminou = True
            break
        if len(quocientes) >= n_terms:
            break
        if q * q * EPS * max(1.0, abs(alpha)) > LIMITE_PRECISAO:
            truncada = True
            mensagem = (f'Fração contínua de {alpha!r} truncada em {len(quocientes)} termos '
                        f'(pedidos {n_terms}): precisão dupla esgotada.')
            logger.debug(mensagem)
            warnings.warn(mensagem, PrecisionExhausted, stacklevel=2)
            break
        x = 1.0 / resto

    return CFExpansion(alpha, quocientes, convergentes, truncada, terminou)


# ---------------------------------------------------------------------------
# Sistema de Dirichlet
# ---------------------------------------------------------------------------

def distance_to_integer(alpha, q):
    """‖qα‖ calculado como |qα − round(qα)|; aceita arrays de q."""
    produto = np.asarray(q, dtype=float) * float(alpha)
    return np.abs(produto - np.round(produto))


@dataclass
class DirichletResult:
    solvable: bool
    witness: tuple
    min_distance: float
    q_min: int
    T: float
    psi: float

    def __iter__(self):
        return iter((self.solvable, self.witness))


def _minimo_convergentes(alpha, limite):
    """Menor ‖qα‖ com 1 <= q <= limite usando os denominadores convergentes."""
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', PrecisionExhausted)
        expansao = continued_fraction(alpha, 200)
    candidatos = [q for q in expansao.denominators if 1 <= q <= limite] or [1]
    q = candidatos[-1]
    return float(distance_to_integer(alpha, q)), q, expansao


def _minimo_forca_bruta(alpha, limite):
    qs = np.arange(1, limite + 1)
    distancias = distance_to_integer(alpha, qs)
    i = int(np.argmin(distancias))
    return float(distancias[i]), int(qs[i])


def dirichlet_solvable(alpha, psi_at_T, T):
    """
    Existe (p, q) ≠ 0 inteiro com |q| <= T e |αq − p| <= ψ(T)?

    Devolve um DirichletResult (desempacotável como (solúvel, testemunha)).
    """
    if not 0.0 < psi_at_T <= 1.0:
        raise ParameterError(f'ψ(T) deve estar em (0, 1] (recebido {psi_at_T}).')
    if not T >= 1.0:
        raise ParameterError(f'T deve ser >= 1 (recebido {T}).')
    limite = int(math.floor(T))

    minimo, q_min, expansao = _minimo_convergentes(alpha, limite)
    incompleta = expansao.truncated and expansao.denominators[-1] <= limite
    if limite <= LIMITE_FORCA_BRUTA:
        bruto, q_bruto = _minimo_forca_bruta(alpha, limite)
        if bruto != minimo:
            if not incompleta:
                logger.warning(f'Convergentes ({minimo!r}, q={q_min}) e força bruta '
                               f'({bruto!r}, q={q_bruto}) divergem para α={alpha!r}, T={T!r}.')
            minimo, q_min = bruto, q_bruto
    elif incompleta:
        logger.warning(f'Convergentes insuficientes para T={T!r}; mínimo pode estar superestimado.')

    testemunha = None
    if minimo <= psi_at_T:
        testemunha = (int(round(q_min * float(alpha))), q_min)
    elif psi_at_T == 1.0:
        testemunha = (1, 0)
    return DirichletResult(testemunha is not None, testemunha, minimo, q_min, float(T),
                           float(psi_at_T))


# ---------------------------------------------------------------------------
# Fluxo diagonal
# ---------------------------------------------------------------------------

class _AvaliadorFluxo:
    """
    Pontos de g_t·u_α·Z² a partir dos coeficientes inteiros (m, n), com α
    tomado como o racional exato a/b do float.
    """

    def __init__(self, alpha, t):
        self.a, self.b = float(alpha).as_integer_ratio()
        self.t = float(t)
        self.et = math.exp(self.t)
        self.emt = math.exp(-self.t)

    def __call__(self, h):
        m, n = int(h[0]), int(h[1])
        return np.array([self.et * ((m * self.b + n * self.a) / self.b), self.emt * n])


@dataclass
class FlowSample:
    t: float
    lattice: Lattice2 = field(repr=False)
    lambda1_sup: float = 0.0
    vector: np.ndarray = field(default=None, repr=False)
    coefficients: tuple = (0, 0)
    lambda1: float = None


def flow_sample(alpha, t, cap=None, domain=None):
    """
    Reticulado g_t·u_α·Z² no instante t e seu primeiro mínimo na norma do
    sup. Com `domain`, vector e lambda1 vêm da norma cuja bola unitária é K.
    """
    avaliar = _AvaliadorFluxo(alpha, t)
    h1, h2 = gauss_reduce(avaliar)
    reticulado = Lattice2(avaliar(h1), avaliar(h2))
    cap = cap or get_settings().enumeration_cap
    lambda1_sup, _, (m, n) = first_minimum(reticulado, cap=cap)
    if domain is not None:
        _, _, (m, n) = first_minimum(reticulado, domain, cap)
    # Reconstrução exata a partir dos coeficientes inteiros.
    h = (m * h1[0] + n * h2[0], m * h1[1] + n * h2[1])
    vetor = avaliar(h)
    if domain is None:
        lambda1_sup = float(np.max(np.abs(vetor)))
    lambda1 = float(domain.gauge(vetor)) if domain is not None else lambda1_sup
    return FlowSample(float(t), reticulado, lambda1_sup, vetor, h, lambda1)


def flow_trajectory(alpha, t_max, dt, cap=None, domain=None):
    """Amostras t = 0, dt, ..., t_max da trajetória g_t·u_α·Z²."""
    if not t_max > 0 or not dt > 0:
        raise ParameterError(f't_max e dt devem ser positivos (recebidos {t_max}, {dt}).')
    n = int(math.floor(t_max / dt + 1e-9))
    return [flow_sample(alpha, k * dt, cap, domain) for k in range(n + 1)]


def witness_image_sup_norm(alpha, witness, T):
    """Norma do sup de g_{log T}·u_α·(−p, q)."""
    p, q = witness
    return float(np.max(np.abs(_AvaliadorFluxo(alpha, math.log(T))((-p, q)))))
