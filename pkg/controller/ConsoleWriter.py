import io
import sys

from typing import cast
from typing import TextIO
from typing import Optional
try:
    from typing import override
except ImportError:  # Python < 3.12
    from typing_extensions import override

from controller.Writer import Writer


class ConsoleWriter(Writer):
    """Writes reports to stdout as UTF-8, colored unless colors are disabled."""

    def __init__(self, showColors: bool, stream: Optional[TextIO] = None) -> None:
        stream = stream or sys.stdout
        self.wrapped = hasattr(stream, "buffer")

        if self.wrapped:
            stream.flush()
            stream = io.TextIOWrapper(stream.buffer, encoding="utf-8", errors="replace")

        super().__init__(showColors=showColors, outputFile=stream)

    @override
    def write(self, text: str) -> None:
        self.outputFile.write(f"{text}")

    @override
    def flush(self) -> None:
        self.outputFile.flush()

    @override
    def close(self) -> None:
        self.outputFile.flush()

        # hand the buffer back to stdout instead of closing it
        if self.wrapped:
            cast(io.TextIOWrapper, self.outputFile).detach()
