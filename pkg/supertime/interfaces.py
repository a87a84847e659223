import typing as T
from abc import ABC

from supertime.constraints import SIGNS
from supertime.errors import SectionNotFoundError
from supertime.grassmann import Session, default_session
from supertime.lib.sampling import DEFAULT_SAMPLES, DEFAULT_SEED
from supertime.report import ReportEntry

BRANCHES = {"plus": (1,), "minus": (-1,), "both": SIGNS}


class RunContext(T.NamedTuple):
    session: Session
    signs: T.Tuple[int, ...] = SIGNS
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES

    @classmethod
    def create(
        cls,
        branch: str = "both",
        seed: int = DEFAULT_SEED,
        samples: int = DEFAULT_SAMPLES,
        session: T.Optional[Session] = None,
    ) -> "RunContext":
        if branch not in BRANCHES:
            raise ValueError(f"unknown branch {branch!r}, expected {sorted(BRANCHES)}")
        return cls(session or default_session(), BRANCHES[branch], seed, samples)


SECTIONS = {}
#: alternative names accepted by :func:`get_section_by_name`
SECTION_ALIASES = {"sec4": "dtheta"}


class BaseSection(ABC):
    """A group of checks that replays one part of the derivation."""

    name = ""

    def __init_subclass__(cls):
        if not cls.name:
            raise ValueError(
                f"Subclasses({cls.__name__}) of BaseSection must define a name"
            )
        if cls.name in SECTIONS:
            raise ValueError(
                f"Section '{cls.name}' already registered by {SECTIONS[cls.name]!r}"
            )
        SECTIONS[cls.name] = cls

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"

    def checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        """Run every check of the section.

        :param ctx: Session, branches, seed and sample count of the run.
        :return: Report entries, in any order.
        """
        raise NotImplementedError('method "checks" not implemented: %r' % self)


def get_section_by_name(name: str) -> BaseSection:
    """
    :raises SectionNotFoundError: If no section is registered under ``name``.
    """
    name = SECTION_ALIASES.get(name, name)
    if name not in SECTIONS:
        raise SectionNotFoundError(f"section {name!r} not found")
    return SECTIONS[name]()
