"""
Error types raised by the ordering library.

Every error derives from ``ValueError`` through ``StochOrdError`` so callers that
already catch ``ValueError`` keep working; the CLI maps all of them to exit code 2.
"""


class StochOrdError(ValueError):
    """Base class for all library errors."""


# 分布构造
class EmptySupport(StochOrdError):
    """A distribution was built from an empty atom list."""


class NonPositiveMass(StochOrdError):
    """An atom carries zero or negative mass."""


class MassNotNormalized(StochOrdError):
    """Atom masses do not sum to one within the mass tolerance."""


class AlphaOutOfRange(StochOrdError):
    """A quantile level lies outside the admissible open interval."""


# 函数与积分
class InvalidFunction(StochOrdError):
    """Malformed knots or jumps (unsorted, non-finite, zero jump, wrong direction)."""


class NonFiniteIntegral(StochOrdError):
    """A Stieltjes sum overflowed or accumulated a non-finite value."""


class EvaluationGap(StochOrdError):
    """The integrand cannot be evaluated exactly at a required point."""


class ContinuityMismatch(StochOrdError):
    """A function carries the wrong continuity tag for the requested use."""


class NotACompatiblePair(StochOrdError):
    """(x1, alpha1) violates the compatibility condition of the local identity."""


# 标准对与效用生成
class NotIncreasing(StochOrdError):
    """A component of a standard pair is not increasing."""


class BadBoundary(StochOrdError):
    """A distortion does not satisfy v(0)=0 and v(1-)=1."""


class WrongMonotonicity(StochOrdError):
    """A generator is monotone in the wrong direction for the requested kind."""


class UnboundedGenerator(StochOrdError):
    """A generator takes non-finite values."""


class DegenerateBase(StochOrdError):
    """The base function is flat on a piece where the tested function varies."""


class CutOutOfRange(StochOrdError):
    """A distortion-side cut lies outside [0, 1]."""


# 序关系与向量
class UnknownName(StochOrdError):
    """An ordering name is not recognised."""


class LengthMismatch(StochOrdError):
    """Two vectors have different lengths."""


class NonPositiveEntryForLog(StochOrdError):
    """Log-majorization was requested for a vector with non-positive entries."""


# 福利函数
class RhoOutOfRange(StochOrdError):
    """S-Gini parameter is not a finite number greater than one."""


class InternalIdentityViolation(StochOrdError):
    """Two forms of the same quantity disagree beyond tolerance."""


# 检验框架
class UnknownTheorem(StochOrdError):
    """A theorem identifier is not recognised by the harness."""


class ScanTooLarge(StochOrdError):
    """An exhaustive scan exceeds the configured enumeration bound."""


# 输入输出
class ParseError(StochOrdError):
    """An input file could not be parsed."""


class ZeroMeanNormalize(StochOrdError):
    """Lorenz normalization requested for a distribution with non-positive mean."""


class BadParams(StochOrdError):
    """Command parameters are invalid."""


__all__ = [
    'StochOrdError',
    'EmptySupport',
    'NonPositiveMass',
    'MassNotNormalized',
    'AlphaOutOfRange',
    'InvalidFunction',
    'NonFiniteIntegral',
    'EvaluationGap',
    'ContinuityMismatch',
    'NotACompatiblePair',
    'NotIncreasing',
    'BadBoundary',
    'WrongMonotonicity',
    'UnboundedGenerator',
    'DegenerateBase',
    'CutOutOfRange',
    'UnknownName',
    'LengthMismatch',
    'NonPositiveEntryForLog',
    'RhoOutOfRange',
    'InternalIdentityViolation',
    'UnknownTheorem',
    'ScanTooLarge',
    'ParseError',
    'ZeroMeanNormalize',
    'BadParams',
]
