import math

import numpy as np
import pytest

from critlocus.dirichlet import (
    continued_fraction, dirichlet_solvable, distance_to_integer, flow_sample, flow_trajectory,
    witness_image_sup_norm,
)
from critlocus.errors import ParameterError, PrecisionExhausted
from critlocus.geometry import Disc, HexagonDomain

DOURADO = (1 + math.sqrt(5)) / 2
RAIZ2 = math.sqrt(2)


class TestFracaoContinua:
    def test_numero_de_ouro(self):
        expansao = continued_fraction(DOURADO, 5)
        assert expansao.partial_quotients == [1, 1, 1, 1, 1]
        assert expansao.convergents == [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]
        assert not expansao.truncated and not expansao.terminated

    def test_raiz_de_dois(self):
        expansao = continued_fraction(RAIZ2, 4)
        assert expansao.partial_quotients == [1, 2, 2, 2]
        assert expansao.convergents == [(1, 1), (3, 2), (7, 5), (17, 12)]
        assert expansao.denominators == [1, 2, 5, 12]

    def test_racional_termina(self):
        expansao = continued_fraction(1 / 3, 10)
        assert expansao.partial_quotients == [0, 3]
        assert expansao.terminated

    def test_negativo(self):
        expansao = continued_fraction(-0.5, 10)
        assert expansao.partial_quotients == [-1, 2]
        assert expansao.convergents[-1] == (-1, 2)

    def test_inteiro(self):
        expansao = continued_fraction(3.0, 5)
        assert expansao.partial_quotients == [3]
        assert expansao.terminated

    def test_precisao_esgotada(self):
        with pytest.warns(PrecisionExhausted):
            expansao = continued_fraction(DOURADO, 100)
        assert expansao.truncated
        assert 20 < len(expansao.partial_quotients) < 100

    def test_convergentes_alternam_em_volta_de_alpha(self):
        expansao = continued_fraction(math.pi, 6)
        assert expansao.partial_quotients[:4] == [3, 7, 15, 1]
        for k, (p, q) in enumerate(expansao.convergents):
            assert (p / q - math.pi) * (-1) ** k <= 0.0

    @pytest.mark.parametrize('alpha, n_terms', [(1.5, 0), (float('nan'), 3), (float('inf'), 3)])
    def test_entradas_invalidas(self, alpha, n_terms):
        with pytest.raises(ParameterError):
            continued_fraction(alpha, n_terms)


class TestDirichlet:
    def test_raiz_de_dois(self):
        solvel, testemunha = dirichlet_solvable(RAIZ2, 0.1, 10)
        assert solvel
        assert testemunha == (7, 5)

    def test_numero_de_ouro_nao_soluvel(self):
        resultado = dirichlet_solvable(DOURADO, 0.4 / 55, 55)
        assert not resultado.solvable
        assert resultado.witness is None
        assert resultado.q_min == 55
        assert resultado.min_distance == pytest.approx(0.00813, abs=1e-4)

    def test_teorema_de_dirichlet(self):
        rng = np.random.default_rng(29)
        for alpha in np.concatenate([rng.uniform(0, 1, 10), [RAIZ2, DOURADO, math.e]]):
            for T in (10, 100, 1000, 250_000):
                resultado = dirichlet_solvable(alpha, 1 / T, T)
                assert resultado.solvable
                p, q = resultado.witness
                assert 1 <= q <= T
                assert abs(alpha * q - p) <= 1 / T

    def test_convergentes_e_forca_bruta_concordam(self, caplog):
        with caplog.at_level('WARNING', logger='critlocus.dirichlet'):
            for alpha in (RAIZ2, DOURADO, math.pi):
                dirichlet_solvable(alpha, 0.5, 5000)
        assert caplog.records == []

    @pytest.mark.parametrize('alpha', [RAIZ2, DOURADO, math.pi])
    def test_faixa_logaritmica_ate_um_milhao(self, alpha, caplog):
        with caplog.at_level('WARNING', logger='critlocus.dirichlet'):
            for T in np.geomspace(1.0, 1e6, 50):
                resultado = dirichlet_solvable(alpha, 1 / T, T)
                assert resultado.solvable
                assert witness_image_sup_norm(alpha, resultado.witness, T) <= 1.0 + 1e-9
        assert caplog.records == []

    def test_fibonacci_falham_com_constante_pequena(self):
        fib = [1, 2]
        while fib[-1] < 1_000_000:
            fib.append(fib[-1] + fib[-2])
        for T in fib[1:]:
            assert not dirichlet_solvable(DOURADO, 0.4 / T, T).solvable

    def test_racional(self):
        resultado = dirichlet_solvable(1 / 3, 1e-6, 3)
        assert resultado.witness == (1, 3)
        assert resultado.min_distance == pytest.approx(0.0, abs=1e-15)

    def test_psi_um_sempre_soluvel(self):
        assert dirichlet_solvable(DOURADO, 1.0, 1).solvable

    @pytest.mark.parametrize('psi, T', [(0.0, 10), (1.5, 10), (0.1, 0.5)])
    def test_entradas_invalidas(self, psi, T):
        with pytest.raises(ParameterError):
            dirichlet_solvable(RAIZ2, psi, T)

    def test_distancia_ao_inteiro(self):
        assert distance_to_integer(RAIZ2, 5) == pytest.approx(5 * RAIZ2 - 7)
        assert distance_to_integer(0.5, np.array([1, 2, 3])).tolist() == [0.5, 0.0, 0.5]


class TestFluxo:
    def test_alpha_zero(self):
        amostra = flow_sample(0.0, 1.0)
        assert amostra.lambda1_sup == pytest.approx(math.exp(-1))
        assert np.abs(amostra.vector) == pytest.approx([0.0, math.exp(-1)])
        assert abs(amostra.coefficients[1]) == 1

    def test_meio(self):
        assert flow_sample(0.5, 0.0).lambda1_sup == pytest.approx(1.0)

    def test_trajetoria(self):
        amostras = flow_trajectory(RAIZ2, 2.0, 0.25)
        assert [a.t for a in amostras] == pytest.approx(np.arange(9) * 0.25)
        for amostra in amostras:
            assert amostra.lattice.covolume() == pytest.approx(1.0, rel=1e-9)
            assert 0.0 < amostra.lambda1_sup <= 1.0 + 1e-12

    def test_vetor_vem_dos_coeficientes(self):
        amostra = flow_sample(RAIZ2, 3.0)
        m, n = amostra.coefficients
        esperado = [math.exp(3.0) * (m + n * RAIZ2), math.exp(-3.0) * n]
        assert amostra.vector == pytest.approx(esperado, rel=1e-9, abs=1e-12)

    def test_imagem_da_testemunha(self):
        assert witness_image_sup_norm(RAIZ2, (7, 5), 10) == pytest.approx(10 * (5 * RAIZ2 - 7))
        assert witness_image_sup_norm(RAIZ2, (7, 5), 10) <= 1.0

    def test_covolume_ao_longo_da_trajetoria(self):
        for amostra in flow_trajectory(DOURADO, 20.0, 0.5):
            assert abs(amostra.lattice.covolume() - 1.0) < 1e-12

    def test_norma_do_disco(self):
        amostra = flow_sample(0.0, 1.0, domain=Disc())
        assert amostra.lambda1 == pytest.approx(math.exp(-1))
        assert amostra.lambda1_sup == pytest.approx(math.exp(-1))

    def test_trajetoria_em_outra_norma(self):
        disco = Disc()
        for amostra in flow_trajectory(RAIZ2, 4.0, 0.5, domain=disco):
            assert amostra.lambda1 == pytest.approx(float(np.linalg.norm(amostra.vector)))
            # |x|_∞ <= |x|_2 <= √2·|x|_∞ e o limite de Minkowski λ₁²·área <= 4·covolume.
            assert amostra.lambda1_sup - 1e-12 <= amostra.lambda1 <= RAIZ2 * amostra.lambda1_sup + 1e-12
            assert amostra.lambda1 ** 2 * disco.area() <= 4.0 + 1e-9

    def test_hexagono_regular(self):
        hexagono = HexagonDomain.regular()
        amostra = flow_sample(DOURADO, 2.0, domain=hexagono)
        m, n = amostra.coefficients
        assert (m, n) != (0, 0)
        assert amostra.lambda1 == pytest.approx(float(hexagono.gauge(amostra.vector)))

    def test_passo_invalido(self):
        with pytest.raises(ParameterError):
            flow_trajectory(RAIZ2, 1.0, 0.0)
