"""
Exceções e avisos do critlocus.

Toda falha de domínio deriva de CritLocusError; a CLI converte essas
exceções em código de saída 1 com o nome do erro na mensagem.
"""


class CritLocusError(Exception):
    """Raiz de todos os erros de domínio."""


class ConfigurationError(CritLocusError):
    """Valor inválido em variável de ambiente / .env."""


class ParameterError(CritLocusError):
    """Parâmetro fora do intervalo aceito pela operação."""


class SpecSyntaxError(CritLocusError):
    """String de especificação (domínio, Q, alpha, psi) mal formada."""


class DomainFileError(CritLocusError):
    """Arquivo .domain ilegível ou incompleto."""


# --- Geometria ---
class DomainError(CritLocusError):
    pass


class InvalidDomain(DomainError):
    """Dados que não descrevem um domínio convexo simétrico limitado."""


class CornerPoint(DomainError):
    """Ângulo cai num vértice: não existe tangente única."""


class UnsupportedDomain(DomainError):
    """Operação não definida para este tipo de domínio."""


# --- Reticulados ---
class LatticeError(CritLocusError):
    pass


class DegenerateLattice(LatticeError):
    """Base com determinante (quase) nulo."""


class EnumerationTooLarge(LatticeError):
    """A enumeração prevista excede o limite configurado."""


# --- Busca crítica ---
class SearchError(CritLocusError):
    pass


class BracketFailure(SearchError):
    """Mudança de sinal não encontrada na equação do hexágono inscrito."""


class NotIrreducible(SearchError):
    """Companheiro não único: o domínio não se comporta como irredutível."""


# --- Construção ---
class ConstructionError(CritLocusError):
    pass


class InvalidClosedSet(ConstructionError):
    """Lacunas de Q fora de ordem, sobrepostas ou profundidade excessiva."""


class TangentIntersectionUnstable(ConstructionError):
    """Retas tangentes quase paralelas."""


class NonConvexResult(ConstructionError):
    """O domínio composto falhou no teste de convexidade por amostragem."""


# --- Análise ---
class AnalysisError(CritLocusError):
    pass


class ResolutionExceeded(AnalysisError):
    """Caixa menor que a resolução da aproximação finita."""


# --- Avisos ---
class CritLocusWarning(UserWarning):
    pass


class ParallelogramWarning(CritLocusWarning):
    """Paralelogramo: minimizadores formam famílias contínuas de cisalhamento."""


class PrecisionExhausted(CritLocusWarning):
    """Termos da fração contínua além da precisão dupla foram descartados."""


class GapAdjusted(CritLocusWarning):
    """Lacuna recortada para (0,1) ou descartada por ser estreita demais."""
