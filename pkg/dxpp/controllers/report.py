import dataclasses

from dxpp.core.exceptions.failure_collector import FailureCollector


@dataclasses.dataclass
class RunReport:
    """
    Outcome of a harness command: the CSV rows, the failed instances and the summary that
    goes into the printed output and the manifest.
    """

    fieldnames: list
    rows: list = dataclasses.field(default_factory=list)
    failures: FailureCollector = dataclasses.field(default_factory=FailureCollector)
    summary: list = dataclasses.field(default_factory=list)
    extra: dict = dataclasses.field(default_factory=dict)
    acceptance_failed: bool = False

    def all_rows(self):
        """:return: result rows followed by the error rows"""
        return self.rows + self.failures.rows()

    def exit_code(self):
        if self.acceptance_failed:
            return 1
        return self.failures.exit_code()
