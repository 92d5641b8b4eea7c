import math

import numpy as np
import pytest

from critlocus.errors import DegenerateLattice, EnumerationTooLarge, ParameterError
from critlocus.geometry import Affine, Disc, HexagonDomain, LpBall, Parallelogram
from critlocus.lattice import (
    Lattice2, covolume, enumerate_nonzero, first_minimum, gauss_reduce, is_admissible, reduce,
)

RAIZ3 = math.sqrt(3)
Z2 = Lattice2((1.0, 0.0), (0.0, 1.0))


def reticulados_aleatorios(n, semente=3):
    rng = np.random.default_rng(semente)
    resultado = []
    while len(resultado) < n:
        g = rng.uniform(-2.0, 2.0, size=(2, 2))
        if abs(np.linalg.det(g)) > 0.2:
            resultado.append(Lattice2.from_matrix(g))
    return resultado


def unimodular_aleatoria(rng):
    u = np.eye(2, dtype=np.int64)
    for _ in range(4):
        k = int(rng.integers(-1, 2))
        passo = np.array([[1, k], [0, 1]]) if rng.random() < 0.5 else np.array([[1, 0], [k, 1]])
        u = u @ passo
    return u


class TestCovolume:
    def test_exemplos(self, reticulado_hexagonal):
        assert covolume(Z2) == 1.0
        assert covolume(reticulado_hexagonal) == pytest.approx(RAIZ3 / 2)
        assert covolume(Lattice2((1.0, 0.0), (10.0, 1.0))) == pytest.approx(1.0)

    def test_base_degenerada(self):
        with pytest.raises(DegenerateLattice):
            Lattice2((1.0, 0.0), (2.0, 0.0))
        with pytest.raises(DegenerateLattice):
            Lattice2((1.0, float('nan')), (0.0, 1.0))

    def test_invariante_por_troca_de_base(self):
        rng = np.random.default_rng(11)
        for reticulado in reticulados_aleatorios(20):
            u = unimodular_aleatoria(rng)
            outro = Lattice2.from_matrix(reticulado.basis @ u)
            assert outro.covolume() == pytest.approx(reticulado.covolume(), rel=1e-9)


class TestReducao:
    def test_cisalhamento(self):
        reduzido = reduce(Lattice2((1.0, 0.0), (10.0, 1.0)))
        vetores = sorted(tuple(np.abs(v)) for v in (reduzido.v1, reduzido.v2))
        assert vetores == [(0.0, 1.0), (1.0, 0.0)]

    def test_hexagonal_ja_reduzido(self, reticulado_hexagonal):
        reduzido = reduce(reticulado_hexagonal)
        assert np.linalg.norm(reduzido.v1) == pytest.approx(1.0)
        assert np.linalg.norm(reduzido.v2) == pytest.approx(1.0)

    def test_ortogonal(self):
        reduzido = reduce(Lattice2((0.0, 3.0), (2.0, 0.0)))
        assert reduzido.v1 == pytest.approx([2.0, 0.0])
        assert np.abs(reduzido.v2) == pytest.approx([0.0, 3.0])

    def test_preserva_o_reticulado(self):
        for reticulado in reticulados_aleatorios(50):
            reduzido, u = reticulado.reduce_with_transform()
            assert abs(round(np.linalg.det(u))) == 1
            assert reticulado.basis @ u == pytest.approx(reduzido.basis)
            assert reduzido.covolume() == pytest.approx(reticulado.covolume(), rel=1e-12)
            assert reduzido.same_lattice(reticulado)
            n1, n2 = np.linalg.norm(reduzido.v1), np.linalg.norm(reduzido.v2)
            assert n1 <= n2 * (1 + 1e-12)
            assert n2 <= np.linalg.norm(reduzido.v2 - reduzido.v1) * (1 + 1e-12)
            assert n2 <= np.linalg.norm(reduzido.v2 + reduzido.v1) * (1 + 1e-12)

    def test_reducao_sobre_coeficientes(self):
        h1, h2 = gauss_reduce(lambda h: np.array([h[0] + 10 * h[1], float(h[1])]))
        assert all(isinstance(a, int) for a in h1 + h2)
        assert sorted([h1, h2]) in ([(-10, 1), (1, 0)], [(1, 0), (10, -1)])


class TestEnumeracao:
    def test_z2(self):
        assert len(enumerate_nonzero(Z2, 2.5)) == 20
        assert len(enumerate_nonzero(Z2, 0.5)) == 0

    def test_hexagonal_raio_um(self, reticulado_hexagonal):
        pontos = enumerate_nonzero(reticulado_hexagonal, 1.0)
        assert len(pontos) == 6
        angulos = np.sort(np.mod(np.arctan2(pontos[:, 1], pontos[:, 0]), 2 * math.pi))
        assert angulos == pytest.approx(np.arange(6) * math.pi / 3, abs=1e-12)

    def test_simetria_e_forca_bruta(self):
        m, n = np.meshgrid(np.arange(-50, 51), np.arange(-50, 51), indexing='ij')
        m, n = m.ravel(), n.ravel()
        nao_nulos = (m != 0) | (n != 0)
        for reticulado in reticulados_aleatorios(100, semente=5):
            raio = 3.0
            pontos = enumerate_nonzero(reticulado, raio)
            todos = np.outer(m, reticulado.v1) + np.outer(n, reticulado.v2)
            dentro = nao_nulos & (np.linalg.norm(todos, axis=1) <= raio)
            assert len(pontos) == int(dentro.sum())
            chaves = {tuple(np.round(p, 9)) for p in pontos}
            assert chaves == {tuple(np.round(-p, 9)) for p in pontos}

    def test_coeficientes_na_base_original(self):
        reticulado = Lattice2((1.0, 0.2), (7.3, 1.0))
        coef, pontos = reticulado.enumerate_with_coefficients(2.0)
        for h, p in zip(coef, pontos):
            assert reticulado.point(h) == pytest.approx(p)

    def test_ordenado_por_norma(self):
        pontos = enumerate_nonzero(Z2, 3.0)
        normas = np.linalg.norm(pontos, axis=1)
        assert np.all(np.diff(normas) >= -1e-12)

    def test_limite_de_enumeracao(self):
        with pytest.raises(EnumerationTooLarge):
            Z2.enumerate_nonzero(100.0, cap=10)

    def test_raio_invalido(self):
        with pytest.raises(ParameterError):
            Z2.enumerate_nonzero(0.0)


class TestAdmissibilidade:
    def test_exemplos(self, disco, reticulado_hexagonal):
        assert is_admissible(Z2, disco)
        assert is_admissible(reticulado_hexagonal, disco)
        assert not is_admissible(Z2.scaled(0.9), disco)

    def test_monotona_na_escala(self, disco):
        for reticulado in reticulados_aleatorios(40, semente=8):
            if is_admissible(reticulado, disco):
                assert is_admissible(reticulado.scaled(1.3), disco)

    @pytest.mark.parametrize('domain', [Disc(), Parallelogram(), HexagonDomain.regular(), LpBall(3.0)],
                             ids=lambda d: type(d).__name__)
    def test_teorema_de_minkowski(self, domain):
        for reticulado in reticulados_aleatorios(100, semente=13):
            if is_admissible(reticulado, domain):
                assert reticulado.covolume() >= domain.area() / 4 - 1e-9


class TestCanonica:
    def test_z2_e_cisalhamento(self):
        for reticulado in (Z2, Lattice2((1.0, 0.0), (10.0, 1.0))):
            canonica = reticulado.canonical()
            assert np.concatenate([canonica.v1, canonica.v2]) == pytest.approx([1, 0, 0, 1], abs=1e-12)

    def test_hexagonal(self, reticulado_hexagonal):
        canonica = Lattice2((-0.5, RAIZ3 / 2), (-1.0, 0.0)).canonical()
        assert canonica.v1 == pytest.approx([1.0, 0.0], abs=1e-12)
        assert canonica.v2 == pytest.approx([0.5, RAIZ3 / 2])
        assert canonica.same_lattice(reticulado_hexagonal)

    def test_independe_da_base(self):
        rng = np.random.default_rng(17)
        for reticulado in reticulados_aleatorios(20, semente=19):
            referencia = reticulado.canonical()
            for _ in range(5):
                outro = Lattice2.from_matrix(reticulado.basis @ unimodular_aleatoria(rng))
                canonica = outro.canonical()
                assert canonica.v1 == pytest.approx(referencia.v1, abs=1e-10)
                assert canonica.v2 == pytest.approx(referencia.v2, abs=1e-10)


class TestPrimeiroMinimo:
    def test_norma_do_sup_por_padrao(self):
        valor, vetor, (m, n) = first_minimum(Z2)
        assert valor == pytest.approx(1.0)
        assert np.max(np.abs(vetor)) == pytest.approx(1.0)
        assert abs(m) + abs(n) == 1

    def test_no_disco_e_a_norma_euclidiana(self):
        reticulado = Lattice2((1.0, 0.0), (0.5, 0.5))
        valor, vetor, (m, n) = first_minimum(reticulado, Disc())
        assert valor == pytest.approx(math.sqrt(0.5))
        assert vetor == pytest.approx(m * reticulado.v1 + n * reticulado.v2)

    def test_hexagonal_em_discos(self, reticulado_hexagonal):
        assert first_minimum(reticulado_hexagonal, Disc())[0] == pytest.approx(1.0)
        assert first_minimum(reticulado_hexagonal, Disc(2.0))[0] == pytest.approx(0.5)

    def test_confere_com_busca_exaustiva(self):
        dominio = Affine(g=[[2.0, 0.3], [0.1, 0.7]], base=Disc())
        for reticulado in reticulados_aleatorios(10, semente=29):
            valor, _, _ = first_minimum(reticulado, dominio)
            pontos = reticulado.enumerate_nonzero(6.0 * dominio.circumradius())
            assert valor == pytest.approx(float(np.min(dominio.gauge(pontos))), rel=1e-12)


def test_contem_e_mesmo_reticulado(reticulado_hexagonal):
    assert reticulado_hexagonal.contains((1.5, RAIZ3 / 2))
    assert not reticulado_hexagonal.contains((0.5, 0.0))
    assert Z2.same_lattice(Lattice2((1.0, 0.0), (3.0, 1.0)))
    assert not Z2.same_lattice(Lattice2((2.0, 0.0), (0.0, 1.0)))
