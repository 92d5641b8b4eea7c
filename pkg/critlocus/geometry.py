"""
Domínios convexos simétricos no plano.

Cada domínio é descrito pela sua função calibre (funcional de Minkowski)
e pela função radial ρ(θ) = 1/calibre(cos θ, sin θ). Todas as operações
aceitam vetores isolados ou arrays de formato (..., 2).
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.integrate import quad

from critlocus.errors import CornerPoint, InvalidDomain, UnsupportedDomain

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
TOL_BOUNDARY = 1e-9


class Region(str, Enum):
    INTERIOR = 'Interior'
    BOUNDARY = 'Boundary'
    EXTERIOR = 'Exterior'


def direction(theta):
    """Vetor unitário (cos θ, sin θ); aceita arrays."""
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def cross(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def angle_of(x):
    """Ângulo polar em [0, 2π)."""
    x = np.asarray(x, dtype=float)
    return np.mod(np.arctan2(x[..., 1], x[..., 0]), TWO_PI)


def _escalar(valor):
    valor = np.asarray(valor)
    return float(valor) if valor.ndim == 0 else valor


def _matriz(g):
    g = np.asarray(g, dtype=float).reshape(2, 2)
    if not np.all(np.isfinite(g)):
        raise InvalidDomain(f'Matriz com entradas não finitas: {g.tolist()}')
    if abs(np.linalg.det(g)) <= 1e-12:
        raise InvalidDomain(f'Matriz singular: {g.tolist()}')
    return g


@dataclass(frozen=True)
class BoundaryPoint:
    theta: float
    point: np.ndarray = field(compare=False)


@dataclass(frozen=True, eq=False)
class ConvexDomain:
    """
    Base dos domínios. Subclasses implementam gauge e tangent_dir;
    o restante (radial, área, classificação) sai daí.
    """
    tol_boundary: float = field(default=TOL_BOUNDARY, kw_only=True)

    def gauge(self, x):
        raise NotImplementedError

    def tangent_dir(self, theta):
        raise UnsupportedDomain(f'{type(self).__name__} não define tangentes.')

    def to_spec(self):
        raise UnsupportedDomain(f'{type(self).__name__} não tem forma textual.')

    def radial(self, theta):
        return _escalar(1.0 / np.asarray(self.gauge(direction(theta))))

    def boundary_point(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.asarray(self.radial(theta))[..., None] * direction(theta)

    def boundary(self, theta):
        theta = float(np.mod(theta, TWO_PI))
        return BoundaryPoint(theta=theta, point=self.boundary_point(theta))

    def breakpoints(self):
        """Ângulos em [0, 2π) onde a fronteira não é C¹."""
        return np.empty(0)

    def area(self):
        # Simetria central: metade do contorno basta.
        pontos = [b for b in self.breakpoints() if 0.0 < b < math.pi]
        metade, _ = quad(lambda th: 0.5 * self.radial(th) ** 2, 0.0, math.pi,
                         points=pontos or None, limit=400, epsabs=1e-13, epsrel=1e-12)
        return 2.0 * metade

    def circumradius(self):
        raio = self.__dict__.get('_raio')
        if raio is None:
            angulos = np.concatenate([np.linspace(0.0, TWO_PI, 4096, endpoint=False), self.breakpoints()])
            raio = float(np.max(self.radial(angulos))) * (1.0 + 1e-3)
            object.__setattr__(self, '_raio', raio)
        return raio

    def classify(self, x):
        valor = float(self.gauge(np.asarray(x, dtype=float)))
        if valor < 1.0 - self.tol_boundary:
            return Region.INTERIOR
        if abs(valor - 1.0) <= self.tol_boundary:
            return Region.BOUNDARY
        return Region.EXTERIOR

    def interior_mask(self, points):
        """Versão vetorizada de classify(...) == Interior."""
        return np.asarray(self.gauge(points)) < 1.0 - self.tol_boundary

    def is_parallelogram(self):
        return False

    def known_irreducible(self):
        return False


@dataclass(frozen=True, eq=False)
class Disc(ConvexDomain):
    radius: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise InvalidDomain(f'Raio do disco deve ser positivo (recebido {self.radius}).')

    def gauge(self, x):
        return _escalar(np.linalg.norm(np.asarray(x, dtype=float), axis=-1) / self.radius)

    def radial(self, theta):
        return _escalar(np.full(np.shape(theta), self.radius))

    def tangent_dir(self, theta):
        return direction(np.asarray(theta, dtype=float) + math.pi / 2)

    def area(self):
        return math.pi * self.radius ** 2

    def circumradius(self):
        return self.radius

    def known_irreducible(self):
        return True

    def to_spec(self):
        return 'disc' if self.radius == 1.0 else f'disc:r={self.radius!r}'


@dataclass(frozen=True, eq=False)
class PolygonDomain(ConvexDomain):
    """Polígono simétrico dado pelos vértices em ordem anti-horária."""
    vertices: np.ndarray = None

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 4 or len(v) % 2:
            raise InvalidDomain('Polígono simétrico precisa de um número par (>= 4) de vértices.')
        m = len(v)
        if not np.allclose(v[m // 2:], -v[:m // 2], atol=1e-12):
            raise InvalidDomain('Vértices não são centralmente simétricos.')
        curvas = cross(np.roll(v, -1, axis=0) - v, np.roll(v, -2, axis=0) - np.roll(v, -1, axis=0))
        if np.any(curvas <= 1e-14):
            raise InvalidDomain('Vértices não formam um polígono estritamente convexo anti-horário.')
        # Cada lado (a, b) vira o funcional c com c·a = c·b = 1.
        lados = np.stack([v, np.roll(v, -1, axis=0)], axis=1)
        coef = np.linalg.solve(lados, np.ones((m, 2, 1)))[..., 0]
        object.__setattr__(self, 'vertices', v)
        object.__setattr__(self, '_coef', coef)

    def gauge(self, x):
        x = np.asarray(x, dtype=float)
        return _escalar(np.max(x @ self._coef.T, axis=-1))

    def tangent_dir(self, theta):
        x = self.boundary_point(float(theta))
        valores = self._coef @ x
        ativos = np.flatnonzero(valores >= valores.max() - 1e-9)
        if len(ativos) > 1:
            raise CornerPoint(f'θ = {float(theta):.12g} é vértice do polígono.')
        i = ativos[0]
        lado = self.vertices[(i + 1) % len(self.vertices)] - self.vertices[i]
        return lado / np.linalg.norm(lado)

    def breakpoints(self):
        return np.sort(angle_of(self.vertices))

    def area(self):
        v = self.vertices
        return 0.5 * float(np.sum(cross(v, np.roll(v, -1, axis=0))))

    def circumradius(self):
        return float(np.max(np.linalg.norm(self.vertices, axis=1)))

    def is_parallelogram(self):
        return len(self.vertices) == 4


@dataclass(frozen=True, eq=False)
class Parallelogram(PolygonDomain):
    """Imagem g[-1,1]²."""
    g: np.ndarray = None

    def __post_init__(self):
        g = _matriz(np.eye(2) if self.g is None else self.g)
        cantos = np.array([[1, -1], [1, 1], [-1, 1], [-1, -1]], dtype=float) @ g.T
        if np.linalg.det(g) < 0:
            cantos = cantos[::-1]
        object.__setattr__(self, 'g', g)
        object.__setattr__(self, '_g_inv', np.linalg.inv(g))
        object.__setattr__(self, 'vertices', cantos)
        super().__post_init__()

    def gauge(self, x):
        y = np.asarray(x, dtype=float) @ self._g_inv.T
        return _escalar(np.max(np.abs(y), axis=-1))

    def area(self):
        return 4.0 * abs(float(np.linalg.det(self.g)))

    def known_irreducible(self):
        return True

    def to_spec(self):
        if np.array_equal(self.g, np.eye(2)):
            return 'square'
        return 'parallelogram:g=' + ','.join(repr(float(a)) for a in self.g.ravel())


@dataclass(frozen=True, eq=False)
class HexagonDomain(PolygonDomain):
    """Hexágono simétrico a partir de três vértices consecutivos."""
    v1: tuple = (1.0, 0.0)
    v2: tuple = (0.5, math.sqrt(3) / 2)
    v3: tuple = (-0.5, math.sqrt(3) / 2)

    def __post_init__(self):
        tres = np.array([self.v1, self.v2, self.v3], dtype=float)
        object.__setattr__(self, 'vertices', np.concatenate([tres, -tres]))
        super().__post_init__()

    @classmethod
    def regular(cls, circumradius=1.0):
        angulos = np.array([0.0, math.pi / 3, 2 * math.pi / 3])
        v = circumradius * direction(angulos)
        return cls(v1=tuple(v[0]), v2=tuple(v[1]), v3=tuple(v[2]))

    def to_spec(self):
        valores = np.concatenate([self.v1, self.v2, self.v3])
        return 'hexagon:v=' + ','.join(repr(float(a)) for a in valores)


@dataclass(frozen=True, eq=False)
class LpBall(ConvexDomain):
    p: float = 2.0

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > 1):
            raise InvalidDomain(f'Expoente da bola Lp deve ser > 1 (recebido {self.p}).')

    def gauge(self, x):
        x = np.asarray(x, dtype=float)
        return _escalar(np.linalg.norm(x, ord=self.p, axis=-1))

    def tangent_dir(self, theta):
        x = self.boundary_point(float(theta))
        grad = np.sign(x) * np.abs(x) ** (self.p - 1)
        t = np.array([-grad[1], grad[0]])
        return t / np.linalg.norm(t)

    def circumradius(self):
        return max(1.0, 2.0 ** (0.5 - 1.0 / self.p))

    def to_spec(self):
        return f'lp:p={self.p!r}'


@dataclass(frozen=True, eq=False)
class Affine(ConvexDomain):
    """Imagem g·base de outro domínio."""
    g: np.ndarray = None
    base: ConvexDomain = None

    def __post_init__(self):
        if self.base is None:
            raise InvalidDomain('Affine precisa de um domínio base.')
        g = _matriz(self.g)
        object.__setattr__(self, 'g', g)
        object.__setattr__(self, '_g_inv', np.linalg.inv(g))
        object.__setattr__(self, '_orientacao', math.copysign(1.0, np.linalg.det(g)))

    def gauge(self, x):
        return self.base.gauge(np.asarray(x, dtype=float) @ self._g_inv.T)

    def tangent_dir(self, theta):
        y = self._g_inv @ self.boundary_point(float(theta))
        t = self.g @ self.base.tangent_dir(float(angle_of(y)))
        return self._orientacao * t / np.linalg.norm(t)

    def breakpoints(self):
        b = self.base.breakpoints()
        if not len(b):
            return b
        return np.sort(angle_of(self.base.boundary_point(b) @ self.g.T))

    def area(self):
        return abs(float(np.linalg.det(self.g))) * self.base.area()

    def is_parallelogram(self):
        return self.base.is_parallelogram()

    def known_irreducible(self):
        return self.base.known_irreducible()

    def to_spec(self):
        matriz = ','.join(repr(float(a)) for a in self.g.ravel())
        return f'affine:g={matriz}:base={self.base.to_spec()}'
