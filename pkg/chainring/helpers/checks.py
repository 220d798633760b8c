from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ''
    context: Optional[str] = None
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return 'SKIP'
        return 'PASS' if self.passed else 'FAIL'

    def with_context(self, context: str) -> 'CheckResult':
        return CheckResult(self.name, self.passed, self.detail, context, self.skipped)


def passed(name: str, detail: str = '') -> CheckResult:
    return CheckResult(name, True, detail)


def failed(name: str, detail: str) -> CheckResult:
    return CheckResult(name, False, detail)


def skipped(name: str, detail: str) -> CheckResult:
    return CheckResult(name, True, detail, skipped=True)
