# -*- coding: utf-8 -*-
"""
异常类型

退出码: 1 = 验证失败, 2 = 非法输入, 3 = 资源上限。
"""

from typing import Any, Optional


class TightSetLabError(RuntimeError):
    """所有实验室异常的基类"""

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self):
        return {
            'error': type(self).__name__,
            'message': str(self),
            'exit_code': self.exit_code,
            'witness': self.witness,
        }


class LabInputError(TightSetLabError):
    exit_code = 2


class LabResourceError(TightSetLabError):
    exit_code = 3


class LabVerificationError(TightSetLabError):
    exit_code = 1


# 输入类
class InvalidQ(LabInputError):
    pass


class BadFlag(LabInputError):
    pass


class NotPrime(LabInputError):
    pass


class BadTransform(LabInputError):
    pass


class NotIncident(LabInputError):
    pass


class NotOnQuadric(LabInputError):
    pass


class ArtifactFormatError(LabInputError):
    pass


# 资源类
class DegreeTooLarge(LabResourceError):
    pass


class FieldTooLarge(LabResourceError):
    pass


class ResourceCap(LabResourceError):
    pass


# 验证类
class NoPrimitivePoly(LabVerificationError):
    pass


class IdentityViolation(LabVerificationError):
    pass


class ModelViolation(LabVerificationError):
    pass


class OrbitMismatch(LabVerificationError):
    pass


class FrameFailure(LabVerificationError):
    pass


class SizeMismatch(LabVerificationError):
    pass


class PartitionInconsistent(LabVerificationError):
    pass


class NotTactical(LabVerificationError):
    pass


class HMismatch(LabVerificationError):
    pass


class LiftFailure(LabVerificationError):
    pass


class AssemblyMismatch(LabVerificationError):
    pass


class CriterionMismatch(LabVerificationError):
    pass


class PatternViolation(LabVerificationError):
    pass


class NotConstantOnOrbit(LabVerificationError):
    pass


class NotTwoIntersection(LabVerificationError):
    pass


class StabilizerViolation(LabVerificationError):
    pass


class VerificationFailed(LabVerificationError):
    pass
