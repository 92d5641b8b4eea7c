"""
Configuração do critlocus.

Os valores vêm do ambiente (ou de um arquivo .env na raiz do projeto) e
são lidos uma única vez. Cada chave tem um padrão razoável, de modo que
nenhum .env é necessário para rodar.
"""

import os
from dataclasses import dataclass, replace
from functools import lru_cache

from critlocus.errors import ConfigurationError

# Carregar variáveis de ambiente do arquivo .env se existir
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # python-dotenv não está instalado, usar apenas variáveis de ambiente do sistema


@dataclass(frozen=True)
class Settings:
    threads: int = os.cpu_count() or 1
    grid_n: int = 720
    refine_tol: float = 1e-9
    enumeration_cap: int = 10_000_000
    tol_boundary: float = 1e-9
    log_level: str = 'WARNING'
    log_config: str = 'logging.ini'

    def com(self, **alteracoes):
        """Cópia com alguns campos trocados (ignora valores None)."""
        alteracoes = {k: v for k, v in alteracoes.items() if v is not None}
        return replace(self, **alteracoes)


def _ler_int(chave, padrao):
    valor = os.getenv(chave)
    if valor is None or valor.strip() == '':
        return padrao
    try:
        numero = int(float(valor))
    except ValueError:
        raise ConfigurationError(f'{chave}={valor!r} não é um número inteiro.') from None
    if numero <= 0:
        raise ConfigurationError(f'{chave} deve ser positivo (recebido {numero}).')
    return numero


def _ler_float(chave, padrao):
    valor = os.getenv(chave)
    if valor is None or valor.strip() == '':
        return padrao
    try:
        numero = float(valor)
    except ValueError:
        raise ConfigurationError(f'{chave}={valor!r} não é um número.') from None
    if not numero > 0:
        raise ConfigurationError(f'{chave} deve ser positivo (recebido {numero}).')
    return numero


def carregar_configuracao():
    """Monta Settings a partir do ambiente, sem cache."""
    padrao = Settings()
    return Settings(
        threads=_ler_int('CRITLOCUS_THREADS', padrao.threads),
        grid_n=_ler_int('CRITLOCUS_GRID', padrao.grid_n),
        refine_tol=_ler_float('CRITLOCUS_REFINE_TOL', padrao.refine_tol),
        enumeration_cap=_ler_int('CRITLOCUS_ENUM_CAP', padrao.enumeration_cap),
        tol_boundary=_ler_float('CRITLOCUS_TOL_BOUNDARY', padrao.tol_boundary),
        log_level=os.getenv('CRITLOCUS_LOG_LEVEL', padrao.log_level).upper(),
        log_config=os.getenv('CRITLOCUS_LOG_CONFIG', padrao.log_config),
    )


@lru_cache(maxsize=1)
def get_settings():
    """Configuração ativa (lida do ambiente na primeira chamada)."""
    return carregar_configuracao()
