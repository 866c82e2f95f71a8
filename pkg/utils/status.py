import sys

from typing import TextIO
from typing import Optional

from utils.terminalColors import RED
from utils.terminalColors import colorize

# Toggled once by main() from --no-color
SHOW_COLORS = True


def printStatus(message: str, file: Optional[TextIO] = None) -> None:
    """Prints a progress line prefixed with [*]."""

    print(f"[*] {message}", file=file or sys.stderr, flush=True)


def printError(message: str, context: Optional[str] = None, file: Optional[TextIO] = None) -> None:
    """
    Prints an error line prefixed with [!], in red unless colors are disabled.

    Arguments:
        message (str): The error message to print.
        context (str | None, optional): Prefixed to the message when given. Defaults to None.
    """

    text = f"[!] {context}: {message}" if context else f"[!] {message}"

    print(colorize(text, foreground=RED) if SHOW_COLORS else text, file=file or sys.stderr, flush=True)
