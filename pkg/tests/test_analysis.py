import math

import numpy as np
import pytest

from critlocus.analysis import (
    box_dimension_locus, box_dimension_param, count_boxes, embed_lattice, sample_locus,
)
from critlocus.construct import ClosedSet01, cantor_gaps
from critlocus.errors import ParameterError, ResolutionExceeded
from critlocus.geometry import Disc
from critlocus.lattice import Lattice2

LOG2_LOG3 = math.log(2) / math.log(3)


class TestContagemNoParametro:
    def test_cantor(self):
        q = cantor_gaps(8)
        for k in range(1, 9):
            assert count_boxes(q, 3.0 ** -k) == 2 ** k

    def test_intervalo_cheio(self):
        q = ClosedSet01()
        assert count_boxes(q, 0.25) == 4
        assert count_boxes(q, 1 / 3) == 3

    def test_pontos_isolados(self):
        q = ClosedSet01(((0.0, 1.0),))
        assert count_boxes(q, 0.1) == 2

    def test_dimensao_do_cantor(self):
        serie = box_dimension_param(cantor_gaps(8), 8)
        assert serie.counts.tolist() == [2 ** k for k in range(1, 9)]
        assert serie.slope == pytest.approx(LOG2_LOG3, abs=1e-9)
        assert serie.r_squared == pytest.approx(1.0)
        assert serie.fit_from == 2

    def test_dimensao_do_cantor_de_razao_um_quarto(self):
        serie = box_dimension_param(cantor_gaps(6, 0.25), 6, scale=0.25)
        assert serie.slope == pytest.approx(0.5, abs=1e-9)

    def test_dimensao_do_intervalo(self):
        assert box_dimension_param(ClosedSet01(), 8).slope == pytest.approx(1.0, abs=1e-9)

    def test_dimensao_dos_extremos(self):
        serie = box_dimension_param(ClosedSet01(((0.0, 1.0),)), 6)
        assert serie.counts.tolist() == [2] * 6
        assert serie.slope == pytest.approx(0.0, abs=1e-12)

    def test_resolucao_excedida(self):
        with pytest.raises(ResolutionExceeded):
            box_dimension_param(cantor_gaps(3), 5)

    @pytest.mark.parametrize('k_max, scale', [(0, 1 / 3), (4, 1.0), (4, 0.0)])
    def test_parametros_invalidos(self, k_max, scale):
        with pytest.raises(ParameterError):
            box_dimension_param(ClosedSet01(), k_max, scale)

    def test_linhas(self):
        serie = box_dimension_param(cantor_gaps(2), 2)
        (e1, n1), (e2, n2) = serie.rows()
        assert (n1, n2) == (2, 4)
        assert (e1, e2) == pytest.approx((1 / 3, 1 / 9))
        assert isinstance(e1, float) and isinstance(n1, int)


class TestMergulho:
    def test_base_canonica(self):
        reticulado = Lattice2((-0.5, math.sqrt(3) / 2), (-1.0, 0.0))
        assert embed_lattice(reticulado) == pytest.approx([1.0, 0.0, 0.5, math.sqrt(3) / 2], abs=1e-12)

    def test_independe_da_base(self):
        reticulado = Lattice2((0.3, 1.1), (1.2, -0.4))
        for u in ([[2, 1], [1, 1]], [[1, 3], [0, 1]], [[0, -1], [1, 0]]):
            outro = Lattice2.from_matrix(reticulado.basis @ np.array(u))
            assert embed_lattice(outro) == pytest.approx(embed_lattice(reticulado), abs=1e-10)

    def test_injetivo_no_disco(self, arco_disco):
        rng = np.random.default_rng(31)
        for t1, t2 in rng.uniform(0.02, 0.98, size=(200, 2)):
            if abs(t1 - t2) < 1e-6:
                continue
            e1 = embed_lattice(arco_disco.point_at(t1)[0].lattice)
            e2 = embed_lattice(arco_disco.point_at(t2)[0].lattice)
            razao = float(np.linalg.norm(e1 - e2)) / abs(t1 - t2)
            assert 0.1 <= razao <= 10.0

    def test_amostras_so_em_q(self, arco_disco):
        ts, pontos = sample_locus(arco_disco, cantor_gaps(1), 9)
        assert ts == pytest.approx([0, 1 / 9, 2 / 9, 1 / 3, 2 / 3, 7 / 9, 8 / 9, 1])
        assert pontos.shape == (8, 4)

    def test_lugar_de_dois_pontos_e_um_so_reticulado(self, arco_disco):
        serie = box_dimension_locus(Disc(), ClosedSet01(((0.0, 1.0),)), n_samples=9, arc=arco_disco)
        assert np.all(serie.counts == 1)
        assert serie.slope == pytest.approx(0.0, abs=1e-12)

    def test_arco_inteiro_tem_dimensao_um(self, arco_disco):
        serie = box_dimension_locus(Disc(), ClosedSet01(), n_samples=3 ** 7, arc=arco_disco)
        assert abs(serie.slope - 1.0) < 0.05


@pytest.mark.slow
class TestDimensaoDoLugar:
    def test_cantor_acompanha_o_parametro(self, arco_disco):
        q = cantor_gaps(8)
        no_parametro = box_dimension_param(q, 8).slope
        no_lugar = box_dimension_locus(Disc(), q, n_samples=3 ** 8, arc=arco_disco).slope
        assert abs(no_lugar - no_parametro) < 0.05
