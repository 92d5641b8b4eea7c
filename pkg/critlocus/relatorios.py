"""
Saída tabular: CSV (ponto decimal, 17 algarismos significativos) e
planilhas .xlsx com o mesmo conteúdo.
"""

import csv
import io
import logging
from pathlib import Path

import numpy as np
from openpyxl import Workbook
from openpyxl.styles import Font, PatternFill
from openpyxl.utils import get_column_letter

logger = logging.getLogger(__name__)

CORES = {
    'delta': '4F81BD',
    'locus': '9BBB59',
    'verify': '8064A2',
    'dimension': 'F79646',
    'dirichlet': 'C0504D',
    'flow': '4BACC6',
    'enumerate': '1F497D',
}


def formatar(valor):
    """Texto de uma célula CSV."""
    if isinstance(valor, (bool, np.bool_)):
        return 'true' if valor else 'false'
    if isinstance(valor, (int, np.integer)):
        return str(int(valor))
    if isinstance(valor, (float, np.floating)):
        return format(float(valor), '.17g')
    if valor is None:
        return ''
    return str(valor)


def csv_text(headers, rows, footer=None):
    saida = io.StringIO()
    escritor = csv.writer(saida, lineterminator='\n')
    escritor.writerow(headers)
    for linha in rows:
        escritor.writerow([formatar(v) for v in linha])
    for linha in footer or []:
        escritor.writerow([formatar(v) for v in linha])
    return saida.getvalue()


def write_csv(path, headers, rows, footer=None):
    texto = csv_text(headers, rows, footer)
    Path(path).write_text(texto, encoding='utf-8', newline='')
    logger.info(f'CSV gravado em {path} ({len(rows)} linha(s)).')
    return Path(path)


def _celula(valor):
    if isinstance(valor, (np.bool_,)):
        return bool(valor)
    if isinstance(valor, np.integer):
        return int(valor)
    if isinstance(valor, np.floating):
        return float(valor)
    return valor


def write_xlsx(path, headers, rows, titulo='Relatório', cor='4F81BD', footer=None):
    """Planilha com cabeçalho em negrito branco sobre fundo colorido."""
    wb = Workbook()
    ws = wb.active
    ws.title = titulo[:31]

    # --- Estilo do Cabeçalho ---
    header_font = Font(bold=True, color="FFFFFF")
    header_fill = PatternFill(start_color=cor, end_color=cor, fill_type="solid")

    ws.append(list(headers))
    for col_num, _ in enumerate(headers, 1):
        cell = ws.cell(row=1, column=col_num)
        cell.font = header_font
        cell.fill = header_fill

    for linha in rows:
        ws.append([_celula(v) for v in linha])
    for linha in footer or []:
        ws.append([_celula(v) for v in linha])
        for cell in ws[ws.max_row]:
            cell.font = Font(italic=True)

    # Autoajuste
    for col_num, _ in enumerate(headers, 1):
        column_letter = get_column_letter(col_num)
        ws.column_dimensions[column_letter].auto_size = True

    wb.save(path)
    logger.info(f'Planilha gravada em {path}.')
    return Path(path)
