from typing import List
from typing import TextIO

from model.RunReport import RunReport

from controller.BundleIO import BundleIO
from controller.JsonCodec import JsonCodec

from utils.terminalColors import RED
from utils.terminalColors import CYAN
from utils.terminalColors import verdict
from utils.terminalColors import colorize

FORMATS = ("json", "text")


class Writer:
    def __init__(self, showColors: bool, outputFile: TextIO) -> None:
        self.outputFile = outputFile
        self.showColors = showColors

    def write(self, text: str) -> None:
        pass

    def flush(self) -> None:
        pass

    def close(self) -> None:
        pass

    def _color(self, text: str, foreground: int) -> str:
        return colorize(text, foreground=foreground) if self.showColors else text

    def _badge(self, passed: bool) -> str:
        if self.showColors:
            return verdict(passed)

        return "[PASS]" if passed else "[FAIL]"

    def renderText(self, report: RunReport, includeTiming: bool = False) -> str:
        """Human oriented rendering; JSON is the stable interface."""

        lines: List[str] = [f"{self._badge(report.passed)} {self._color(report.command, CYAN)}"]

        if report.inputsDigest:
            lines.append(f"  inputs  {report.inputsDigest}")

        for name, value in report.classifications.items():
            lines.append(f"  {name}: {value}")

        for name, value in report.bounds.items():
            lines.append(f"  {name} = {value}")

        if report.verdicts:
            lines.append("  verdicts:")
            lines.extend(f"    {self._badge(bool(ok))} {name}" for name, ok in report.verdicts.items())

        if report.residuals:
            width = max(len(name) for name in report.residuals)
            lines.append("  residuals:")
            lines.extend(f"    {name.ljust(width)}  {float(value):.3e}" for name, value in report.residuals.items())

        for error in report.errors:
            lines.append(self._color(f"  [!] {error}", RED))

        if includeTiming and report.wallTime is not None:
            lines.append(f"  wall time {report.wallTime:.3f}s")

        return "\n".join(lines) + "\n"

    def writeReport(self, report: RunReport, fmt: str = "json", includeTiming: bool = False) -> None:
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")

        if fmt == "json":
            self.write(BundleIO.dumps(JsonCodec.encodeReport(report, includeTiming)))
        else:
            self.write(self.renderText(report, includeTiming))

        self.flush()
