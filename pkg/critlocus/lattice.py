"""
Reticulados de posto 2: covolume, redução de Gauss–Lagrange, enumeração
limitada e teste de admissibilidade contra um domínio.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from critlocus.config import get_settings
from critlocus.errors import DegenerateLattice, EnumerationTooLarge, ParameterError
from critlocus.geometry import Parallelogram, cross

logger = logging.getLogger(__name__)

DET_MIN = 1e-12
MAX_ITER_REDUCAO = 10_000


def gauss_reduce(avaliar, h1=(1, 0), h2=(0, 1)):
    """
    Redução de Gauss–Lagrange feita sobre coeficientes inteiros.

    avaliar(h) devolve as coordenadas do ponto do reticulado com
    coeficientes h; os vetores são sempre recalculados a partir dos
    coeficientes, nunca acumulados. Devolve (h1, h2) com |w1| <= |w2| e
    |w2| <= |w2 ± w1|.
    """
    h1, h2 = tuple(int(a) for a in h1), tuple(int(a) for a in h2)
    u, v = avaliar(h1), avaliar(h2)
    if u @ u > v @ v:
        h1, h2, u, v = h2, h1, v, u

    for _ in range(MAX_ITER_REDUCAO):
        mu = round(float(u @ v) / float(u @ u))
        if mu:
            h2 = (h2[0] - mu * h1[0], h2[1] - mu * h1[1])
            v = avaliar(h2)
        if v @ v >= u @ u:
            return h1, h2
        h1, h2, u, v = h2, h1, v, u

    raise DegenerateLattice(f'Redução de Gauss não convergiu após {MAX_ITER_REDUCAO} iterações.')


@dataclass(frozen=True, eq=False)
class Lattice2:
    """Λ = Z·v1 + Z·v2 (colunas da matriz g)."""
    v1: np.ndarray
    v2: np.ndarray

    def __post_init__(self):
        v1 = np.asarray(self.v1, dtype=float).reshape(2)
        v2 = np.asarray(self.v2, dtype=float).reshape(2)
        if not (np.all(np.isfinite(v1)) and np.all(np.isfinite(v2))):
            raise DegenerateLattice('Base com entradas não finitas.')
        if abs(cross(v1, v2)) <= DET_MIN:
            raise DegenerateLattice(f'Base degenerada: det({v1.tolist()}, {v2.tolist()}) ~ 0.')
        object.__setattr__(self, 'v1', v1)
        object.__setattr__(self, 'v2', v2)

    @classmethod
    def from_matrix(cls, g):
        g = np.asarray(g, dtype=float).reshape(2, 2)
        return cls(g[:, 0], g[:, 1])

    @property
    def basis(self):
        return np.column_stack([self.v1, self.v2])

    def __repr__(self):
        return f'Lattice2(v1={self.v1.tolist()}, v2={self.v2.tolist()})'

    def determinant(self):
        return float(cross(self.v1, self.v2))

    def covolume(self):
        return abs(self.determinant())

    def transformed(self, g):
        g = np.asarray(g, dtype=float).reshape(2, 2)
        return Lattice2(g @ self.v1, g @ self.v2)

    def scaled(self, c):
        return Lattice2(c * self.v1, c * self.v2)

    def point(self, h):
        return h[0] * self.v1 + h[1] * self.v2

    def reduce_with_transform(self):
        """Base reduzida e a matriz inteira U (unimodular) com B·U = base reduzida."""
        h1, h2 = gauss_reduce(self.point)
        u = np.array([[h1[0], h2[0]], [h1[1], h2[1]]], dtype=np.int64)
        return Lattice2(self.point(h1), self.point(h2)), u

    def reduce(self):
        return self.reduce_with_transform()[0]

    def enumerate_with_coefficients(self, radius, cap=None):
        """
        Pontos não nulos com norma euclidiana <= radius e os respectivos
        coeficientes (m, n) na base original, ordenados por norma e ângulo.
        """
        if not radius > 0:
            raise ParameterError(f'Raio deve ser positivo (recebido {radius}).')
        cap = cap or get_settings().enumeration_cap
        reduzido, u = self.reduce_with_transform()
        w1, w2 = reduzido.v1, reduzido.v2
        covol = reduzido.covolume()
        # Distâncias entre retas vizinhas paralelas a w2 e a w1.
        h1 = covol / np.linalg.norm(w2)
        h2 = covol / np.linalg.norm(w1)
        limite_m = math.ceil(radius / h1) + 1
        limite_n = math.ceil(radius / h2) + 1
        previsto = (2 * limite_m + 1) * (2 * limite_n + 1)
        if previsto > cap:
            raise EnumerationTooLarge(
                f'Enumeração prevista de {previsto} pontos excede o limite {cap} (raio {radius:g}).')

        m, n = np.meshgrid(np.arange(-limite_m, limite_m + 1), np.arange(-limite_n, limite_n + 1),
                           indexing='ij')
        m, n = m.ravel(), n.ravel()
        pontos = np.outer(m, w1) + np.outer(n, w2)
        normas = np.linalg.norm(pontos, axis=1)
        manter = (normas <= radius * (1 + 1e-12)) & ((m != 0) | (n != 0))
        pontos, normas = pontos[manter], normas[manter]
        coef = np.column_stack([m[manter], n[manter]]) @ u.T

        angulos = np.mod(np.arctan2(pontos[:, 1], pontos[:, 0]), 2 * math.pi)
        ordem = np.lexsort((angulos, np.round(normas, 12)))
        return coef[ordem], pontos[ordem]

    def enumerate_nonzero(self, radius, cap=None):
        return self.enumerate_with_coefficients(radius, cap)[1]

    def contains(self, x, tol=1e-8):
        c = np.linalg.solve(self.basis, np.asarray(x, dtype=float))
        return bool(np.all(np.abs(c - np.round(c)) <= tol))

    def same_lattice(self, other, tol=1e-7):
        """Mesmo reticulado: a mudança de base é inteira com det ±1."""
        u = np.linalg.solve(self.basis, other.basis)
        inteiro = np.round(u)
        if np.any(np.abs(u - inteiro) > tol * (1 + np.abs(u))):
            return False
        return abs(round(np.linalg.det(inteiro))) == 1

    def canonical(self, rel_tol=1e-9):
        """
        Base canônica, independente da base de entrada.

        w1: vetor mais curto de menor ângulo em [0, π);
        w2: vetor mais curto que completa uma base positiva, de menor
        ângulo anti-horário a partir de w1.
        """
        reduzido = self.reduce()
        n1 = float(np.linalg.norm(reduzido.v1))
        n2 = float(np.linalg.norm(reduzido.v2))
        covol = reduzido.covolume()
        pontos = self.enumerate_nonzero(n2 * (1 + 1e-6))
        normas = np.linalg.norm(pontos, axis=1)

        curtos = pontos[normas <= n1 * (1 + rel_tol)]
        angulos = np.arctan2(curtos[:, 1], curtos[:, 0])
        virar = (angulos < -rel_tol) | (angulos >= math.pi - rel_tol)
        curtos = np.where(virar[:, None], -curtos, curtos)
        angulos = np.arctan2(curtos[:, 1], curtos[:, 0])
        w1 = curtos[np.argmin(angulos)]

        det = cross(w1, pontos)
        completam = pontos[np.abs(det - covol) <= rel_tol * max(covol, 1.0) * 10]
        normas_c = np.linalg.norm(completam, axis=1)
        completam = completam[normas_c <= normas_c.min() * (1 + rel_tol)]
        giro = np.arctan2(cross(w1, completam), completam @ w1)
        w2 = completam[np.argmin(giro)]
        return Lattice2(w1, w2)


def covolume(lattice):
    return lattice.covolume()


def reduce(lattice):
    return lattice.reduce()


def enumerate_nonzero(lattice, radius, cap=None):
    return lattice.enumerate_nonzero(radius, cap)


def is_admissible(lattice, domain, cap=None):
    """Nenhum ponto não nulo no interior (pontos na fronteira são permitidos)."""
    pontos = lattice.enumerate_nonzero(domain.circumradius(), cap)
    if not len(pontos):
        return True
    return not bool(np.any(domain.interior_mask(pontos)))


def first_minimum(lattice, domain=None, cap=None):
    """
    Primeiro mínimo λ₁(Λ, K) = min gauge_K(v) sobre v ∈ Λ ∖ {0}, o vetor que o
    realiza e os coeficientes (m, n) dele na base de Λ. Sem domínio, K é o
    quadrado [-1, 1]² e λ₁ é o da norma do sup.
    """
    domain = domain if domain is not None else Parallelogram()
    reduzido = lattice.reduce()
    melhor = float(min(domain.gauge(reduzido.v1), domain.gauge(reduzido.v2)))
    # gauge_K(v) <= melhor implica |v| <= R(K)·melhor.
    raio = domain.circumradius() * melhor * (1 + 1e-9)
    coef, pontos = lattice.enumerate_with_coefficients(raio, cap)
    valores = np.asarray(domain.gauge(pontos), dtype=float)
    i = int(np.argmin(valores))
    return float(valores[i]), pontos[i], (int(coef[i, 0]), int(coef[i, 1]))
