"""
KappaLat - 예외 계층
격자 분석 라이브러리와 CLI가 공유하는 오류 타입 및 종료 코드 매핑
"""

from typing import Any, Optional, Sequence, Tuple


# CLI 종료 코드
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_EXCEEDED = 3


class KappaLatError(Exception):
    """모든 KappaLat 오류의 기반 클래스"""


class InputError(KappaLatError, ValueError):
    """입력 또는 사전조건 위반 (종료 코드 2)"""


class ParseError(InputError):
    """lattice-v1 파싱 오류"""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class NotALattice(InputError):
    """meet 또는 join이 유일하게 존재하지 않는 쌍"""

    def __init__(self, pair: Tuple[int, int], operation: str):
        self.pair = pair
        self.operation = operation
        super().__init__(f"elements {pair[0]} and {pair[1]} have no unique {operation}")


class CoverNotReduced(InputError):
    """추이적으로 함의되는 cover 입력"""

    def __init__(self, pair: Tuple[int, int], via: int):
        self.pair = pair
        self.via = via
        super().__init__(f"cover {pair[0]} {pair[1]} is implied through element {via}")


class CycleDetected(InputError):
    """cover 그래프의 순환"""

    def __init__(self, cycle: Sequence[int]):
        self.cycle = tuple(cycle)
        super().__init__(f"cover graph has a cycle through {list(self.cycle)}")


class NotComparable(InputError):
    pass


class NotACover(InputError):
    pass


class NotMaximalChain(InputError):
    pass


class NotLeftModular(InputError):
    pass


class NotSuccessorClosed(InputError):
    pass


class NotLinearExtension(InputError):
    pass


class NotExtremalChain(InputError):
    pass


class NotAcyclic(InputError):
    pass


class InvalidInterval(InputError):
    pass


class MissingMetadata(InputError):
    """brick 메타데이터가 필요한 작업에 메타데이터가 없음"""


class KappaUndefined(KappaLatError):
    """κ(j) 또는 κ⁻¹(m)의 후보 집합에 최댓값(최솟값)이 없음"""

    def __init__(self, element: int, candidates: Sequence[int], inverse: bool = False):
        self.element = element
        self.candidates = tuple(candidates)
        self.inverse = inverse
        symbol = "kappa_inv" if inverse else "kappa"
        super().__init__(
            f"{symbol}({element}) undefined: incomparable extremal candidates {list(self.candidates)}; "
            f"not a kappa-lattice"
        )


class BudgetExceeded(KappaLatError):
    """열거 상한 초과 (종료 코드 3)"""

    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"{what}: enumeration budget of {limit} exceeded")


class SearchBudgetExceeded(BudgetExceeded):
    """비반분배 격자에서 λ 전단사 탐색 거부"""


class AmbiguousCoverLabel(KappaLatError):
    """cover 라벨이 유일하지 않음 (반분배성 위반 신호)"""

    def __init__(self, cover: Tuple[int, int], candidates: Sequence[Any]):
        self.cover = cover
        self.candidates = tuple(candidates)
        super().__init__(f"cover {cover[0]} < {cover[1]} has label candidates {list(self.candidates)}")


class InconsistentModel(KappaLatError):
    """대수 모델과 격자 데이터가 서로 맞지 않음"""


def exit_code_for(exc: Optional[BaseException]) -> int:
    """예외를 CLI 종료 코드로 변환"""
    if exc is None:
        return EXIT_OK
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET_EXCEEDED
    return EXIT_INPUT_ERROR
