"""Exception hierarchy shared by every module of the package."""


class DelaunayAnglesError(Exception):
    """Base class for all errors raised by this package."""


# surface construction
class DuplicateGluing(DelaunayAnglesError, ValueError):
    pass


class DanglingDart(DelaunayAnglesError, ValueError):
    pass


class NonOrientable(DelaunayAnglesError, ValueError):
    pass


class NotSimplicial(DelaunayAnglesError, ValueError):
    pass


class DisconnectedSurface(DelaunayAnglesError, ValueError):
    pass


# linear programming
class DimensionMismatch(DelaunayAnglesError, ValueError):
    pass


# feasibility
class OracleLimitExceeded(DelaunayAnglesError, RuntimeError):
    pass


class NoBoundary(DelaunayAnglesError, ValueError):
    pass


class NotADisk(DelaunayAnglesError, ValueError):
    pass


class MissingAngle(DelaunayAnglesError, ValueError):
    pass


# flow
class EpsilonOutOfRange(DelaunayAnglesError, ValueError):
    pass


class MalformedCut(DelaunayAnglesError, AssertionError):
    pass


# realization
class DegenerateAngle(DelaunayAnglesError, ValueError):
    pass


class DegeneratePosition(DelaunayAnglesError, ValueError):
    pass


# three-manifolds
class InconsistentGluing(DelaunayAnglesError, ValueError):
    pass


class UnGluedFace(DelaunayAnglesError, ValueError):
    pass


class InvariantViolation(DelaunayAnglesError, ValueError):
    pass


# combinatorial geometry
class NotASphere(DelaunayAnglesError, ValueError):
    pass


# problem files
class ProblemSyntaxError(DelaunayAnglesError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class UnresolvedReference(ProblemSyntaxError):
    pass


class DuplicateDeclaration(ProblemSyntaxError):
    pass
