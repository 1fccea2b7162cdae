"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable ``code`` which the command line
front end prints in its ``RESULT: error=<code>`` trailer.
"""


class ColombeauError(Exception):
    code = "error"


class NetSyntaxError(ColombeauError, SyntaxError):
    code = "syntax"


class OverlapError(ColombeauError, ValueError):
    code = "overlap"


class UnsupportedPattern(ColombeauError, ValueError):
    code = "unsupported-pattern"


class IndeterminateSign(ColombeauError, ArithmeticError):
    code = "indeterminate-sign"


class BackendMismatch(ColombeauError, TypeError):
    code = "backend-mismatch"


class NotAPartition(ColombeauError, ValueError):
    code = "not-a-partition"


class NotSharplyBounded(ColombeauError, ValueError):
    code = "not-sharply-bounded"


class EmptyFamily(ColombeauError, ValueError):
    code = "empty-family"


class EmptyClip(EmptyFamily):
    code = "empty-clip"


class UnsupportedShapeCombo(ColombeauError, NotImplementedError):
    code = "unsupported-shape-combo"


class DomainEvaluationError(ColombeauError, ValueError):
    code = "domain-evaluation"


class OutsideDomain(ColombeauError, ValueError):
    code = "outside-domain"


class NoModulusFound(ColombeauError, ValueError):
    code = "no-modulus"


class MissingBound(ColombeauError, ValueError):
    code = "missing-bound"


class ChainNotDecreasing(ColombeauError, ValueError):
    code = "chain-not-decreasing"


class EmptyEntry(ColombeauError, ValueError):
    code = "empty-entry"


class NotNested(ColombeauError, ValueError):
    code = "not-nested"


class NotCauchy(ColombeauError, ValueError):
    code = "not-cauchy"


class SequenceTooShort(ColombeauError, ValueError):
    code = "sequence-too-short"


class QuadratureFailure(ColombeauError, ArithmeticError):
    code = "quadrature"


class BudgetInfeasible(ColombeauError, ValueError):
    code = "budget-infeasible"


class PreconditionMomentFailure(ColombeauError, ValueError):
    code = "moment-precondition"


class DerivativeOverflow(ColombeauError, OverflowError):
    code = "derivative-overflow"
