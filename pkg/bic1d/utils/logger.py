import sys


class Logger:
    """Prints ``[LEVEL] message`` lines to stderr and optionally to a log file."""

    def __init__(self, silent_mode=False, verbose=False, log_path=None):
        self.silent_mode = silent_mode
        self.verbose = verbose
        self._log_fp = open(log_path, 'a', encoding='utf-8') if log_path else None

    def log(self, message: str, level: str = "INFO"):
        if level == "DEBUG" and not self.verbose:
            return
        line = f"[{level}] {message}"
        if self._log_fp is not None:
            self._log_fp.write(line + "\n")
            self._log_fp.flush()
        if not self.silent_mode:
            print(line, file=sys.stderr)

    def debug(self, message: str):
        self.log(message, "DEBUG")

    def info(self, message: str):
        self.log(message, "INFO")

    def warning(self, message: str):
        self.log(message, "WARNING")

    def error(self, message: str):
        self.log(message, "ERROR")

    def close(self):
        if self._log_fp is not None:
            self._log_fp.close()
            self._log_fp = None


def silent_logger():
    """Default logger for library calls: discards everything."""
    return Logger(silent_mode=True)
