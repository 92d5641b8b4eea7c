"""
Figuras SVG: contorno do domínio, pontos do reticulado, tangentes dos
triângulos colados e rótulos dos pontos na fronteira.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from jinja2 import Environment, PackageLoader, select_autoescape

from critlocus.construct import CompositeDomain
from critlocus.geometry import TWO_PI, Region, angle_of

logger = logging.getLogger(__name__)

_ambiente = Environment(
    loader=PackageLoader('critlocus', 'templates'),
    autoescape=select_autoescape(['svg', 'j2']),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)

CORES = {Region.BOUNDARY: '#c0504d', Region.INTERIOR: '#000000', Region.EXTERIOR: '#7f7f7f'}


@dataclass(frozen=True)
class RenderSpec:
    width: int = 600
    height: int = 600
    view: tuple = (-1.6, 1.6)
    boundary: bool = True
    lattice: bool = True
    tangents: bool = True
    labels: bool = True
    n_boundary: int = 720

    def to_pixels(self, pontos):
        lo, hi = self.view
        pontos = np.asarray(pontos, dtype=float).reshape(-1, 2)
        x = (pontos[:, 0] - lo) / (hi - lo) * self.width
        y = (hi - pontos[:, 1]) / (hi - lo) * self.height
        return np.column_stack([x, y])


def _fmt(valor):
    return '%.3f' % valor


def _pontos_svg(spec, pontos):
    return ' '.join(f'{_fmt(x)},{_fmt(y)}' for x, y in spec.to_pixels(pontos))


def _contorno(domain, n):
    angulos = np.unique(np.concatenate([np.linspace(0.0, TWO_PI, n, endpoint=False),
                                        np.mod(domain.breakpoints(), TWO_PI)]))
    return domain.boundary_point(angulos)


def render_svg(domain, lattice=None, spec=None, title=''):
    """Texto SVG 1.1 da figura; a saída só depende das entradas."""
    spec = spec or RenderSpec()
    lo, hi = spec.view
    contexto = {
        'largura': spec.width,
        'altura': spec.height,
        'titulo': title,
        'base': None, 'contorno': None, 'tangentes': [], 'pontos': [], 'rotulos': [],
    }
    origem = spec.to_pixels([0.0, 0.0])[0]
    canto_lo, canto_hi = spec.to_pixels([[lo, lo], [hi, hi]])
    contexto['eixos'] = {'x0': _fmt(origem[0]), 'y0': _fmt(origem[1]),
                         'x1': _fmt(canto_lo[0]), 'x2': _fmt(canto_hi[0]),
                         'y1': _fmt(canto_hi[1]), 'y2': _fmt(canto_lo[1])}

    if spec.boundary:
        contexto['contorno'] = _pontos_svg(spec, _contorno(domain, spec.n_boundary))
        if isinstance(domain, CompositeDomain) and domain.triangles:
            contexto['base'] = _pontos_svg(spec, _contorno(domain.base, spec.n_boundary))

    if spec.tangents and isinstance(domain, CompositeDomain):
        for tri in domain.triangles:
            for t in (tri, tri.negated()):
                contexto['tangentes'].append(_pontos_svg(spec, [t.pa, t.v, t.pb]))

    if lattice is not None and spec.lattice:
        raio = max(abs(lo), abs(hi)) * np.sqrt(2)
        pontos = np.vstack([[0.0, 0.0], lattice.enumerate_nonzero(raio)])
        dentro = np.all((pontos >= lo) & (pontos <= hi), axis=1)
        pontos = pontos[dentro]
        regioes = [domain.classify(p) if np.any(p) else Region.INTERIOR for p in pontos]
        for p, px, regiao in zip(pontos, spec.to_pixels(pontos), regioes):
            contexto['pontos'].append({'x': _fmt(px[0]), 'y': _fmt(px[1]),
                                       'r': '5.000' if regiao is Region.BOUNDARY else '3.000',
                                       'cor': CORES[regiao]})
        if spec.labels:
            na_fronteira = [p for p, r in zip(pontos, regioes) if r is Region.BOUNDARY]
            na_fronteira.sort(key=lambda p: float(angle_of(p)))
            for k, p in enumerate(na_fronteira, 1):
                px = spec.to_pixels(p * 1.08)[0]
                contexto['rotulos'].append({'x': _fmt(px[0]), 'y': _fmt(px[1]), 'texto': f'p{k}'})

    return _ambiente.get_template('figura.svg.j2').render(**contexto)


def write_svg(path, domain, lattice=None, spec=None, title=''):
    path = Path(path)
    path.write_text(render_svg(domain, lattice, spec, title), encoding='utf-8')
    logger.info(f'Figura gravada em {path}.')
    return path
