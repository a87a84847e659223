import json
import typing as T

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_REPORT = "report-only"
STATUSES = (STATUS_PASS, STATUS_FAIL, STATUS_REPORT)

FORMAT_JSON = "json"
FORMAT_TEXT = "text"


class ReportEntry(T.NamedTuple):
    check_id: str
    reference: str
    status: str
    expected: T.Optional[str]
    actual: str
    notes: str = ""

    def to_dict(self) -> T.Dict[str, T.Any]:
        return self._asdict()


def check(
    check_id: str,
    reference: str,
    passed: bool,
    actual: T.Any,
    expected: T.Any = None,
    notes: str = "",
) -> ReportEntry:
    """Entry that passes or fails."""
    return ReportEntry(
        check_id,
        reference,
        STATUS_PASS if passed else STATUS_FAIL,
        None if expected is None else str(expected),
        str(actual),
        notes,
    )


def report_only(
    check_id: str,
    reference: str,
    actual: T.Any,
    expected: T.Any = None,
    notes: str = "",
) -> ReportEntry:
    """Entry that records a computed value without a verdict."""
    return ReportEntry(
        check_id,
        reference,
        STATUS_REPORT,
        None if expected is None else str(expected),
        str(actual),
        notes,
    )


class VerificationReport(T.NamedTuple):
    """
    Outcome of a verification run.

    :param entries: Checks sorted by ``check_id``.
    :param seed: Seed of every random choice made during the run.
    :param convention: Selected convention toggles.
    """

    entries: T.Tuple[ReportEntry, ...]
    seed: int
    convention: T.Dict[str, str]

    @classmethod
    def build(
        cls,
        entries: T.Iterable[ReportEntry],
        seed: int,
        convention: T.Mapping[str, str],
    ) -> "VerificationReport":
        ordered = tuple(sorted(entries, key=lambda entry: entry.check_id))
        seen = set()
        for entry in ordered:
            if entry.check_id in seen:
                raise ValueError(f"duplicate check id {entry.check_id!r}")
            seen.add(entry.check_id)
        return cls(ordered, seed, dict(convention))

    @property
    def failures(self) -> T.List[ReportEntry]:
        return [entry for entry in self.entries if entry.status == STATUS_FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def counts(self) -> T.Dict[str, int]:
        return {
            status: sum(entry.status == status for entry in self.entries)
            for status in STATUSES
        }

    def to_json_lines(self) -> str:
        """A header object followed by one object per entry."""
        header = {"seed": self.seed, "convention": self.convention, **self.counts()}
        lines = [json.dumps(header, sort_keys=True)]
        lines.extend(
            json.dumps(entry.to_dict(), sort_keys=True, ensure_ascii=False)
            for entry in self.entries
        )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        width = max((len(entry.check_id) for entry in self.entries), default=8)
        lines = [
            f"seed {self.seed}; "
            + ", ".join(f"{k}={v}" for k, v in sorted(self.convention.items())),
            f"{'status':<12} {'check':<{width}} actual",
        ]
        for entry in self.entries:
            lines.append(f"{entry.status:<12} {entry.check_id:<{width}} {entry.actual}")
            if entry.expected is not None and entry.status != STATUS_PASS:
                lines.append(f"{'':<12} {'':<{width}} expected: {entry.expected}")
            if entry.notes:
                lines.append(f"{'':<12} {'':<{width}} {entry.notes}")
        counts = self.counts()
        lines.append(", ".join(f"{counts[status]} {status}" for status in STATUSES))
        return "\n".join(lines) + "\n"

    def render(self, output_format: str = FORMAT_JSON) -> str:
        if output_format == FORMAT_JSON:
            return self.to_json_lines()
        if output_format == FORMAT_TEXT:
            return self.to_text()
        raise ValueError(f"unknown report format {output_format!r}")
