class FailureCollector:
    """
    This class is for collecting the failures of a harness run, one per instance.
    It is just a DTO for transmitting the failed instances to the CSV writer and the exit code.
    """

    def __init__(self) -> None:
        self.failures: list[tuple[dict, BaseException]] = []

    def add(self, key: dict, e: BaseException):
        """
        :param key: the CSV columns identifying the instance, e.g. {'n': 10, 'm': 5, 'seed': 3}
        :param e: the exception raised while processing it
        """
        self.failures.append((dict(key), e))

    def __len__(self):
        return len(self.failures)

    def __bool__(self):
        return bool(self.failures)

    def rows(self):
        """
        Error rows for the CSV output: the instance key plus the exception name and message
        """
        return [
            dict(key, error=type(e).__name__, message=str(e).replace('\n', ' '))
            for key, e in self.failures
        ]

    def exit_code(self):
        return 1 if self.failures else 0
