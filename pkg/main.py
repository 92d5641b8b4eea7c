# main.py - linha de comando do critlocus

import logging
import logging.config
import math
import warnings
from pathlib import Path

import click

# Carregar variáveis de ambiente do arquivo .env se existir
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # python-dotenv não está instalado, usar apenas variáveis de ambiente do sistema

from critlocus.analysis import box_dimension_locus, box_dimension_param
from critlocus.config import get_settings
from critlocus.construct import CompositeDomain, build_construction, compare_deltas, verify_locus
from critlocus.critical import (
    critical_arc, critical_search, locus_closes, locus_parameterize, square_critical_family,
)
from critlocus.dirichlet import dirichlet_solvable, flow_trajectory
from critlocus.domain_file import dumps_domain, load_domain, save_domain
from critlocus.errors import CritLocusError, CritLocusWarning, SpecSyntaxError
from critlocus.relatorios import CORES, csv_text, write_csv, write_xlsx
from critlocus.render import RenderSpec, write_svg, render_svg
from critlocus.selftest import run_selftest
from critlocus.specs import (
    com_tolerancia, parse_alpha, parse_domain, parse_lattice, parse_psi, parse_q, parse_t_range,
)

BASE_DIR = Path(__file__).resolve().parent


# --- Configuração de logging ---
def configurar_logging(settings, verbose=False):
    caminho = Path(settings.log_config)
    if not caminho.is_absolute():
        caminho = BASE_DIR / caminho
    if caminho.exists():
        logging.config.fileConfig(caminho, disable_existing_loggers=False)
    else:
        logging.basicConfig(level=logging.WARNING, format='%(levelname)-5.5s [%(name)s] %(message)s')
    logging.getLogger('critlocus').setLevel('DEBUG' if verbose else settings.log_level)


# --- Utilitários ---
def carregar_dominio(texto):
    """Caminho de um arquivo .domain ou string de especificação."""
    caminho = Path(texto)
    if caminho.suffix == '.domain' or caminho.is_file():
        return com_tolerancia(load_domain(caminho))
    return parse_domain(texto)


def emitir(comando, headers, rows, out=None, xlsx=None, footer=None):
    """CSV em --out (ou na saída padrão) e, se pedido, a planilha em --xlsx."""
    if out:
        write_csv(out, headers, rows, footer)
        click.echo(f'✅ CSV gravado em {out} ({len(rows)} linha(s))', err=True)
    else:
        click.echo(csv_text(headers, rows, footer), nl=False)
    if xlsx:
        write_xlsx(xlsx, headers, rows, titulo=comando, cor=CORES[comando], footer=footer)
        click.echo(f'✅ Planilha gravada em {xlsx}', err=True)


def avisos_capturados(lista):
    for aviso in lista:
        if issubclass(aviso.category, CritLocusWarning):
            click.secho(f'⚠️  {aviso.category.__name__}: {aviso.message}', fg='yellow', err=True)


class CritLocusGroup(click.Group):
    """Erros de domínio viram código de saída 1 com o nome do erro."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except CritLocusError as erro:
            click.secho(f'❌ {type(erro).__name__}: {erro}', fg='red', err=True)
            ctx.exit(1)


@click.group(cls=CritLocusGroup)
@click.option('--verbose', '-v', is_flag=True, help='Log detalhado (DEBUG) do pacote critlocus.')
@click.pass_context
def cli(ctx, verbose):
    """Determinantes críticos e lugares críticos de domínios convexos simétricos do plano."""
    settings = get_settings()
    configurar_logging(settings, verbose)
    ctx.obj = settings


# --- delta ---
@cli.command()
@click.argument('domain_spec')
@click.option('--grid', 'grid_n', type=click.IntRange(min=8), default=None, help='Pontos da grade em [0, π).')
@click.option('--tol', 'refine_tol', type=click.FloatRange(min=0, min_open=True), default=None,
              help='Tolerância do refinamento.')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='CSV com os minimizadores.')
@click.option('--xlsx', type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def delta(settings, domain_spec, grid_n, refine_tol, out, xlsx):
    """Estima Δ(K) e lista os reticulados críticos."""
    domain = carregar_dominio(domain_spec)
    with warnings.catch_warnings(record=True) as capturados:
        warnings.simplefilter('always', CritLocusWarning)
        report = critical_search(domain, grid_n, refine_tol, settings=settings)
    avisos_capturados(capturados)

    click.echo(f'✅ delta_est = {report.delta_est:.15g}')
    continuos = sum(1 for c in report.clusters if c.continuum)
    if report.parallelogram:
        nota = 'famílias contínuas de cisalhamento (uma testemunha reportada)'
    elif continuos:
        nota = f'{continuos} grupo(s) em família contínua'
    else:
        nota = 'minimizadores isolados'
    click.echo(f'   minimizadores: {len(report.minimizers)} em {len(report.clusters)} grupo(s); {nota}')
    click.echo(f'   razão de Minkowski Δ/(V/4) = {report.minkowski_ratio:.15g}')
    click.echo(f'   densidade do empacotamento = {report.packing_density:.15g}')

    if out or xlsx:
        linhas = [(c.s, c.u, c.p1[0], c.p1[1], c.p2[0], c.p2[1], c.covolume) for c in report.minimizers]
        emitir('delta', ['s', 'u', 'p1.x', 'p1.y', 'p2.x', 'p2.y', 'covolume'], linhas, out, xlsx)


# --- locus ---
@cli.command()
@click.argument('domain_spec')
@click.option('--samples', type=click.IntRange(min=2), default=100, show_default=True)
@click.option('--assume-irreducible', is_flag=True, help='Prossegue mesmo sem irredutibilidade conhecida.')
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.option('--xlsx', type=click.Path(dir_okay=False), default=None)
def locus(domain_spec, samples, assume_irreducible, out, xlsx):
    """Amostra o lugar crítico t ↦ φ(t) (CSV: t, p, q, covolume)."""
    domain = carregar_dominio(domain_spec)
    arc = None
    if isinstance(domain, CompositeDomain):
        # φ vive no domínio base; o composto só seleciona t ∈ Q.
        domain, arc = domain.base, domain.arc
    pontos = locus_parameterize(domain, samples, assume_irreducible=assume_irreducible, arc=arc)
    linhas = [(p.t, p.p[0], p.p[1], p.q[0], p.q[1], p.covolume) for p in pontos]
    emitir('locus', ['t', 'p.x', 'p.y', 'q.x', 'q.y', 'covolume'], linhas, out, xlsx)
    if locus_closes(pontos):
        click.echo('✅ φ(1) = φ(0): o lugar crítico fecha.', err=True)
    else:
        click.secho('⚠️  φ(1) difere de φ(0) como reticulado.', fg='yellow', err=True)


# --- construct ---
@cli.command()
@click.option('--base', 'base_spec', default='disc', show_default=True)
@click.option('--q', 'q_spec', required=True, help='cantor:depth=<d>[:ratio=<r>], full, endpoints ou gaps:a-b,...')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Arquivo .domain de saída.')
@click.option('--check-delta', is_flag=True, help='Compara Δ(K) com Δ(H).')
def construct(base_spec, q_spec, out, check_delta):
    """Cola triângulos tangentes sobre as lacunas de Q."""
    base = parse_domain(base_spec)
    with warnings.catch_warnings(record=True) as capturados:
        warnings.simplefilter('always', CritLocusWarning)
        q = parse_q(q_spec)
        domain = build_construction(base, q)
    avisos_capturados(capturados)

    if out:
        save_domain(domain, out)
        click.echo(f'✅ Domínio composto salvo em {out}')
    else:
        click.echo(dumps_domain(domain), nl=False)
    click.echo(f'   {len(domain.triangles)} triângulo(s) tangente(s); área {domain.area():.15g}', err=True)

    if check_delta:
        comparacao = compare_deltas(domain)
        simbolo = '✅' if comparacao.preserved and comparacao.monotone else '❌'
        click.echo(f'{simbolo} Δ(H) = {comparacao.delta_base:.15g}, Δ(K) = {comparacao.delta_composite:.15g}')


# --- verify ---
@cli.command()
@click.option('--domain', 'domain_path', required=True, help='Arquivo .domain.')
@click.option('--grid', 'n_grid', type=click.IntRange(min=2), default=2000, show_default=True)
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.option('--xlsx', type=click.Path(dir_okay=False), default=None)
def verify(domain_path, n_grid, out, xlsx):
    """Confere que φ(t) é admissível em K exatamente para t ∈ Q."""
    domain = carregar_dominio(domain_path)
    if not isinstance(domain, CompositeDomain):
        raise SpecSyntaxError(f'verify exige um domínio composto (recebido {domain_path!r}).')
    resultado = verify_locus(domain, n_grid=n_grid)
    simbolo = '✅' if resultado.agreement_fraction == 1.0 else '❌'
    click.echo(f'{simbolo} agreement = {resultado.agreement_fraction:.15g} '
               f'({resultado.n_scored} de {resultado.n_grid} pontos pontuados)')
    for t, admissivel, esperado in resultado.mismatches[:10]:
        click.echo(f'   t = {t:.12g}: admissível={admissivel}, t ∈ Q={esperado}')

    if out or xlsx:
        linhas = [(t, a, domain.q.distance(t) <= 1e-12) for t, a in zip(resultado.t, resultado.admissible)]
        emitir('verify', ['t', 'admissible', 'in_q'], linhas, out, xlsx)


# --- dimension ---
@cli.command()
@click.option('--q', 'q_spec', default=None, help='Conjunto Q (dimensão de contagem em [0, 1]).')
@click.option('--domain', 'domain_path', default=None, help='Arquivo .domain (lugar mergulhado em R⁴).')
@click.option('--samples', type=click.IntRange(min=2), default=3 ** 8, show_default=True)
@click.option('--k-max', type=click.IntRange(min=1), default=None)
@click.option('--scale', type=click.FloatRange(0, 1, min_open=True, max_open=True), default=1 / 3,
              show_default='1/3')
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.option('--xlsx', type=click.Path(dir_okay=False), default=None)
def dimension(q_spec, domain_path, samples, k_max, scale, out, xlsx):
    """Dimensão de contagem de caixas (CSV: epsilon, count; última linha: slope, r²)."""
    if (q_spec is None) == (domain_path is None):
        raise click.UsageError('Informe exatamente um entre --q e --domain.')
    if q_spec is not None:
        q = parse_q(q_spec)
        if k_max is None:
            k_max = 8
            if q.resolution:
                k_max = max(1, int(math.floor(math.log(q.resolution) / math.log(scale) + 1e-9)))
        serie = box_dimension_param(q, k_max, scale)
    else:
        domain = carregar_dominio(domain_path)
        if not isinstance(domain, CompositeDomain):
            raise SpecSyntaxError(f'--domain exige um domínio composto (recebido {domain_path!r}).')
        serie = box_dimension_locus(domain, n_samples=samples, k_max=k_max)
    emitir('dimension', ['epsilon', 'count'], serie.rows(), out, xlsx,
           footer=[(serie.slope, serie.r_squared)])


# --- render ---
def _reticulado_da_figura(domain, texto):
    if texto is None or texto == 'none':
        return None
    if texto.startswith('lattice:'):
        return parse_lattice(texto)
    if texto.startswith('shear:'):
        eixo, _, valor = texto[len('shear:'):].partition('=')
        try:
            return square_critical_family(eixo, float(valor))
        except ValueError:
            raise SpecSyntaxError(f'Cisalhamento inválido {texto!r}: use shear:x=<t>.') from None
    if texto == 'critical':
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', CritLocusWarning)
            return critical_search(domain).best.lattice
    if texto.startswith('t='):
        try:
            t = float(texto[2:])
        except ValueError:
            raise SpecSyntaxError(f'Parâmetro inválido {texto!r}: use t=<número>.') from None
        arc = domain.arc if isinstance(domain, CompositeDomain) else critical_arc(domain)
        return arc.point_at(t)[0].lattice
    raise SpecSyntaxError(f'Reticulado {texto!r}: use t=<x>, critical, shear:x=<t>, lattice:... ou none.')


@cli.command()
@click.option('--domain', 'domain_spec', required=True, help='Especificação ou arquivo .domain.')
@click.option('--lattice', 'lattice_spec', default=None, help='t=<x>, critical, shear:x=<t>, lattice:... ou none.')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Arquivo SVG (padrão: saída padrão).')
@click.option('--width', type=click.IntRange(min=50), default=600, show_default=True)
@click.option('--height', type=click.IntRange(min=50), default=600, show_default=True)
@click.option('--no-labels', is_flag=True)
@click.option('--no-tangents', is_flag=True)
@click.option('--title', default='')
def render(domain_spec, lattice_spec, out, width, height, no_labels, no_tangents, title):
    """Figura SVG do domínio e de um reticulado."""
    domain = carregar_dominio(domain_spec)
    reticulado = _reticulado_da_figura(domain, lattice_spec)
    spec = RenderSpec(width=width, height=height, labels=not no_labels, tangents=not no_tangents)
    if out:
        write_svg(out, domain, reticulado, spec, title)
        click.echo(f'✅ Figura gravada em {out}', err=True)
    else:
        click.echo(render_svg(domain, reticulado, spec, title), nl=False)


# --- dirichlet / flow ---
@cli.command()
@click.option('--alpha', 'alpha_spec', required=True, help='sqrt2, golden, pi, e, sqrtN ou decimal.')
@click.option('--psi', 'psi_spec', default='c/T', show_default=True, help='c/T, <número>/T ou 1/(T log T).')
@click.option('--c', 'c', type=float, default=1.0, show_default=True)
@click.option('--t-range', 't_range', default='1:1e6:log', show_default=True, help='a:b:log[:n] ou a:b:lin[:n].')
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.option('--xlsx', type=click.Path(dir_okay=False), default=None)
def dirichlet(alpha_spec, psi_spec, c, t_range, out, xlsx):
    """Solubilidade de |αq − p| <= ψ(T), |q| <= T ao longo de T."""
    alpha = parse_alpha(alpha_spec)
    psi = parse_psi(psi_spec, c)
    linhas = []
    for T in parse_t_range(t_range):
        resultado = dirichlet_solvable(alpha, psi(float(T)), float(T))
        p, q = resultado.witness if resultado.solvable else (None, None)
        linhas.append((float(T), resultado.solvable, p, q, resultado.min_distance))
    emitir('dirichlet', ['T', 'solvable', 'p', 'q', 'min_distance'], linhas, out, xlsx)


@cli.command()
@click.option('--alpha', 'alpha_spec', required=True)
@click.option('--tmax', type=click.FloatRange(min=0, min_open=True), default=20.0, show_default=True)
@click.option('--dt', type=click.FloatRange(min=0, min_open=True), default=0.01, show_default=True)
@click.option('--domain', 'domain_spec', default=None, help='Norma do λ₁ (padrão: sup).')
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.option('--xlsx', type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def flow(settings, alpha_spec, tmax, dt, domain_spec, out, xlsx):
    """Trajetória g_t·u_α·Z² (CSV: t, lambda1_sup, v.x, v.y; com --domain, lambda1 em K)."""
    alpha = parse_alpha(alpha_spec)
    domain = carregar_dominio(domain_spec) if domain_spec else None
    amostras = flow_trajectory(alpha, tmax, dt, settings.enumeration_cap, domain)
    if domain is None:
        linhas = [(a.t, a.lambda1_sup, a.vector[0], a.vector[1]) for a in amostras]
        emitir('flow', ['t', 'lambda1_sup', 'v.x', 'v.y'], linhas, out, xlsx)
    else:
        linhas = [(a.t, a.lambda1, a.lambda1_sup, a.vector[0], a.vector[1]) for a in amostras]
        emitir('flow', ['t', 'lambda1', 'lambda1_sup', 'v.x', 'v.y'], linhas, out, xlsx)


# --- enumerate ---
@cli.command(name='enumerate')
@click.argument('lattice_spec')
@click.option('--radius', type=click.FloatRange(min=0, min_open=True), required=True)
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.option('--xlsx', type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def enumerate_points(settings, lattice_spec, radius, out, xlsx):
    """Pontos não nulos do reticulado com norma <= R (CSV: m, n, x, y)."""
    reticulado = parse_lattice(lattice_spec)
    coef, pontos = reticulado.enumerate_with_coefficients(radius, settings.enumeration_cap)
    linhas = [(int(h[0]), int(h[1]), float(x[0]), float(x[1])) for h, x in zip(coef, pontos)]
    emitir('enumerate', ['m', 'n', 'x', 'y'], linhas, out, xlsx)


# --- selftest ---
@cli.command()
@click.pass_context
def selftest(ctx):
    """Bateria rápida de verificações numéricas."""
    click.echo('🚀 Iniciando verificações...')
    click.echo('-' * 30)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', CritLocusWarning)
        resultados = run_selftest(click.echo)
    click.echo('-' * 30)
    falhas = [r for r in resultados if not r.ok]
    if falhas:
        click.secho(f'❌ {len(falhas)} de {len(resultados)} verificação(ões) falharam.', fg='red')
        ctx.exit(1)
    click.secho(f'✅ Todas as {len(resultados)} verificações passaram.', fg='green')


# --- Execução ---
if __name__ == '__main__':
    cli()
