import math

import numpy as np
import pytest

from critlocus.errors import CornerPoint, InvalidDomain
from critlocus.geometry import (
    Affine, ConvexDomain, Disc, HexagonDomain, LpBall, Parallelogram, PolygonDomain, Region,
    angle_of, direction,
)

RAIZ3 = math.sqrt(3)

DOMINIOS = [
    Disc(),
    Disc(2.5),
    Parallelogram(),
    Parallelogram(g=[[1.0, 0.5], [0.0, 1.0]]),
    HexagonDomain.regular(),
    HexagonDomain(v1=(1.0, 0.2), v2=(0.3, 1.1), v3=(-0.8, 0.7)),
    LpBall(3.0),
    LpBall(1.5),
    Affine(g=[[2.0, 0.3], [0.1, 0.7]], base=Disc()),
]


class TestGauge:
    def test_disco(self, disco):
        assert disco.gauge((2.0, 0.0)) == pytest.approx(2.0)
        assert disco.gauge((0.0, 0.0)) == 0.0
        assert disco.gauge((3.0, 4.0)) == pytest.approx(5.0)

    def test_quadrado_e_norma_do_sup(self):
        assert Parallelogram().gauge((0.5, -0.25)) == pytest.approx(0.5)

    def test_bola_lp(self):
        assert LpBall(3.0).gauge((1.0, 1.0)) == pytest.approx(2 ** (1 / 3))

    def test_vetorizado(self, disco):
        valores = disco.gauge(np.array([[1.0, 0.0], [0.0, 2.0], [3.0, 4.0]]))
        assert valores.shape == (3,)
        assert valores == pytest.approx([1.0, 2.0, 5.0])

    @pytest.mark.parametrize('domain', DOMINIOS, ids=lambda d: type(d).__name__)
    def test_simetria_e_subaditividade(self, domain):
        rng = np.random.default_rng(7)
        x = rng.normal(size=(10_000, 2)) * 2
        y = rng.normal(size=(10_000, 2)) * 2
        gx = domain.gauge(x)
        assert np.all(np.abs(gx - domain.gauge(-x)) < 1e-12 * (1 + gx))
        assert np.all(domain.gauge(x + y) <= gx + domain.gauge(y) + 1e-12)

    @pytest.mark.parametrize('domain', DOMINIOS, ids=lambda d: type(d).__name__)
    def test_consistencia_radial(self, domain):
        theta = np.linspace(0.0, 2 * math.pi, 1000, endpoint=False)
        assert np.all(np.abs(domain.gauge(domain.boundary_point(theta)) - 1.0) <= 1e-9)
        assert domain.radial(theta) == pytest.approx(domain.radial(theta + math.pi))

    @pytest.mark.parametrize('domain', DOMINIOS, ids=lambda d: type(d).__name__)
    def test_ponto_de_fronteira(self, domain):
        ponto = domain.boundary(-0.5)
        assert 0.0 <= ponto.theta < 2 * math.pi
        assert ponto.theta == pytest.approx(2 * math.pi - 0.5)
        assert domain.classify(ponto.point) is Region.BOUNDARY
        assert domain.boundary(ponto.theta + 2 * math.pi) == ponto

    def test_afim_compoe_com_a_inversa(self):
        g = np.array([[2.0, 0.3], [0.1, 0.7]])
        imagem = Affine(g=g, base=LpBall(3.0))
        x = np.random.default_rng(1).normal(size=(500, 2))
        esperado = LpBall(3.0).gauge(x @ np.linalg.inv(g).T)
        assert np.max(np.abs(imagem.gauge(x) - esperado)) < 1e-10


class TestRadialETangente:
    def test_radial(self, disco, hexagono):
        assert disco.radial(1.234) == pytest.approx(1.0)
        assert Parallelogram().radial(math.pi / 4) == pytest.approx(math.sqrt(2))
        assert hexagono.radial(math.pi / 6) == pytest.approx(RAIZ3 / 2)

    def test_tangente_do_disco(self, disco):
        assert disco.tangent_dir(0.0) == pytest.approx([0.0, 1.0], abs=1e-15)
        assert disco.tangent_dir(math.pi / 3) == pytest.approx([-RAIZ3 / 2, 0.5])

    def test_tangente_do_quadrado_num_lado(self):
        assert Parallelogram().tangent_dir(0.0) == pytest.approx([0.0, 1.0])

    def test_vertice_nao_tem_tangente(self, hexagono):
        with pytest.raises(CornerPoint):
            hexagono.tangent_dir(0.0)
        with pytest.raises(CornerPoint):
            Parallelogram().tangent_dir(math.pi / 4)

    def test_tangente_da_bola_lp_ortogonal_ao_gradiente(self):
        bola = LpBall(3.0)
        for theta in (0.3, 1.0, 2.5):
            x = bola.boundary_point(theta)
            grad = np.sign(x) * np.abs(x) ** 2
            assert float(np.dot(bola.tangent_dir(theta), grad)) == pytest.approx(0.0, abs=1e-12)

    def test_quebras(self, disco, hexagono):
        assert len(disco.breakpoints()) == 0
        assert hexagono.breakpoints() == pytest.approx(np.arange(6) * math.pi / 3, abs=1e-12)


class TestArea:
    def test_formas_fechadas(self, disco, hexagono):
        assert disco.area() == pytest.approx(math.pi)
        assert Parallelogram().area() == pytest.approx(4.0)
        assert hexagono.area() == pytest.approx(3 * RAIZ3 / 2)

    def test_quadratura_confere_com_formas_fechadas(self):
        assert LpBall(2.0).area() == pytest.approx(math.pi, rel=1e-10)
        # A versão genérica integra a função radial.
        assert ConvexDomain.area(HexagonDomain.regular()) == pytest.approx(3 * RAIZ3 / 2, rel=1e-9)

    def test_afim_multiplica_pelo_determinante(self):
        assert Affine(g=[[2.0, 0.0], [0.0, 1.0]], base=Disc()).area() == pytest.approx(2 * math.pi)


class TestClassificacao:
    def test_regioes(self, disco):
        assert disco.classify((1.0, 0.0)) is Region.BOUNDARY
        assert disco.classify((0.5, RAIZ3 / 2 - 1e-12)) is Region.BOUNDARY
        assert disco.classify((0.5, 0.5)) is Region.INTERIOR
        assert disco.classify((2.0, 0.0)) is Region.EXTERIOR

    def test_mascara_interior(self, disco):
        mascara = disco.interior_mask(np.array([[0.1, 0.1], [1.0, 0.0], [1.5, 0.0]]))
        assert mascara.tolist() == [True, False, False]

    def test_paralelogramo(self, hexagono):
        assert Parallelogram().is_parallelogram()
        assert not hexagono.is_parallelogram()
        assert Affine(g=[[1.0, 1.0], [0.0, 1.0]], base=Parallelogram()).is_parallelogram()


class TestValidacao:
    def test_raio_invalido(self):
        with pytest.raises(InvalidDomain):
            Disc(-1.0)

    def test_poligono_assimetrico(self):
        with pytest.raises(InvalidDomain):
            PolygonDomain(vertices=[[1, 0], [0, 1], [-1, 0], [0, -2]])

    def test_matriz_singular(self):
        with pytest.raises(InvalidDomain):
            Affine(g=[[1.0, 2.0], [2.0, 4.0]], base=Disc())

    def test_expoente_lp(self):
        with pytest.raises(InvalidDomain):
            LpBall(1.0)


def test_direcao_e_angulo():
    theta = np.array([0.0, 1.0, 4.0])
    assert angle_of(direction(theta)) == pytest.approx(theta)
