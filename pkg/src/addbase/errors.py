"""Exception hierarchy shared by the whole toolkit.

Every error carries an ``exit_code`` so the CLI can map failures onto its
documented exit-code contract:

    0  success
    2  parse / parameter validation
    3  mathematical precondition failure
    4  enumeration budget exceeded
    5  verification failure (witness missing, golden mismatch)
"""

from __future__ import annotations


class AddbaseError(Exception):
    exit_code = 1


class ParseError(AddbaseError):
    exit_code = 2


class EmptyModuli(ParseError):
    pass


class OrderOverflow(ParseError):
    pass


class BadParameters(ParseError):
    pass


class TruncationTooSmall(ParseError):
    pass


class DegenerateD(ParseError):
    """The prescribed dimension collides with the niceness criterion (d = 1 mod p)."""


class BadWindow(ParseError):
    pass


class UnknownSuite(ParseError):
    pass


class MathPreconditionError(AddbaseError):
    exit_code = 3


class EmptySet(MathPreconditionError):
    pass


class GroupMismatch(MathPreconditionError):
    pass


class QuotientMismatch(MathPreconditionError):
    pass


class NotASubgroup(MathPreconditionError):
    pass


class NotABasis(MathPreconditionError):
    pass


class TooSmall(MathPreconditionError):
    pass


class NotOrderTwo(MathPreconditionError):
    pass


class PreconditionViolated(MathPreconditionError):
    pass


class NoSymmetricTransversal(MathPreconditionError):
    """Some self-negating coset contains no involution, so no symmetric
    system of representatives exists (e.g. Z/4 modulo {0,2})."""


class BudgetExceeded(AddbaseError):
    exit_code = 4


class VerificationFailure(AddbaseError):
    exit_code = 5


class NoWitnessFound(VerificationFailure):
    pass
