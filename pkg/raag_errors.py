"""
RAAG Toolkit Errors
One exception family for every module, each carrying the CLI exit code it maps to.

Exit codes:
- 1: usage / parse errors (graph, word, automorphism and class files)
- 2: domain precondition violations (unknown vertex, invalid partition, ...)
- 3: search budget exhausted or a question left undecided at the configured bound
"""

from typing import Optional


class RaagError(ValueError):
    """Base class for all toolkit errors"""

    exit_code: int = 2


# ============================================================================
# PARSE ERRORS (exit 1)
# ============================================================================

class ParseError(RaagError):
    """Malformed input text; remembers the 1-based line number when known"""

    exit_code = 1

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphParseError(ParseError):
    """Graph file could not be read"""


class WordParseError(ParseError):
    """Word or literal text could not be read"""


class AutomorphismParseError(ParseError):
    """Automorphism file could not be read"""


# ============================================================================
# DOMAIN ERRORS (exit 2)
# ============================================================================

class DomainError(RaagError):
    """A precondition on the mathematical input does not hold"""

    exit_code = 2


class UnknownVertexError(DomainError):
    """Vertex name not declared in the defining graph"""


class InvalidPartitionError(DomainError):
    """Sides do not form a Γ-Whitehead partition (or pair)"""


class InvalidAutomorphism(DomainError):
    """Image map fails the homomorphism or invertibility check"""


# ============================================================================
# BUDGET / UNDECIDED (exit 3)
# ============================================================================

class SearchBudgetExceeded(RaagError):
    """Exact search stopped at its node limit; no truncated answer is returned"""

    exit_code = 3


class OuterEqualityUndecided(RaagError):
    """Conjugator witness grew past the configured bound"""

    exit_code = 3


class TieAtBound(RaagError):
    """Norm comparison tied across the whole implemented prefix"""

    exit_code = 3


class NoCertifiedAssignment(RaagError):
    """No multiplier choice made the generator set pairwise commuting"""

    exit_code = 3
