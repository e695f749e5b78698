# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

import dataclasses
import enum
import logging
import types
import typing
from collections.abc import Iterable, Sequence

from kyfan_means.common import KyFanException, MeanDomainError
from kyfan_means.consts import CHECK_TOLERANCE
from kyfan_means.grid import GridSpec, IntervalGrid
from kyfan_means.means import get_mean
from kyfan_means.report import CheckReport
from kyfan_means.seiffert import mean_to_seiffert
from kyfan_means.verify.hypotheses import (
    check_diff_decreasing,
    check_g_decreasing,
    check_q_increasing,
    check_ratio_monotone,
)
from kyfan_means.verify.inequalities import check_harmonic_kyfan, check_ratio_kyfan

log = logging.getLogger(__name__)


@enum.unique
class Relation(enum.Enum):
    ratio = "ratio"
    harmonic = "harmonic"

    def __str__(self) -> str:
        return self.value


@dataclasses.dataclass(frozen=True)
class UnknownChainError(KyFanException, KeyError):
    name: str

    @property
    def what(self) -> str:
        return f"Unknown chain: {self.name!r}. Available presets: {', '.join(PRESET_CHAINS)}."


@dataclasses.dataclass(frozen=True)
class ChainSpec:
    """
    An ordered list of means claimed to satisfy the relation for every adjacent pair.
    """

    mean_ids: tuple[str, ...]
    relation: Relation = Relation.ratio
    grid: GridSpec = dataclasses.field(default_factory=GridSpec.kyfan_default)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mean_ids", tuple(self.mean_ids))
        if not self.mean_ids:
            raise MeanDomainError("a chain needs at least one mean")
        for mean_id in self.mean_ids:
            get_mean(mean_id)

    def pairs(self) -> list[tuple[str, str]]:
        return list(zip(self.mean_ids, self.mean_ids[1:]))


def check_pair(
    m_id: str,
    n_id: str,
    relation: Relation,
    grid: GridSpec | None = None,
    tolerance: float = CHECK_TOLERANCE,
    workers: int = 1,
) -> CheckReport:
    m, n = get_mean(m_id), get_mean(n_id)
    match relation:
        case Relation.ratio:
            return check_ratio_kyfan(m, n, grid, tolerance, workers)
        case Relation.harmonic:
            return check_harmonic_kyfan(m, n, grid, tolerance, workers)


def verify_chain(chain: ChainSpec, tolerance: float = CHECK_TOLERANCE, workers: int = 1) -> list[CheckReport]:
    reports = []
    for m_id, n_id in chain.pairs():
        log.debug("checking %s pair %s <= %s", chain.relation, m_id, n_id)
        reports.append(check_pair(m_id, n_id, chain.relation, chain.grid, tolerance, workers))
    return reports


class PresetBranch(typing.NamedTuple):
    mean_ids: tuple[str, ...]
    relation: Relation


RATIO_CHAIN = ("G", "L", "P", "A", "NS", "T")

PRESET_CHAINS: typing.Final[typing.Mapping[str, tuple[PresetBranch, ...]]] = types.MappingProxyType(
    {
        "ns2003": (PresetBranch(RATIO_CHAIN, Relation.ratio),),
        "ns2003-extended": (PresetBranch((*RATIO_CHAIN, "Q"), Relation.ratio),),
        "harmonic-upper": (PresetBranch(("Stanh", "T", "Ssin", "NS", "A"), Relation.harmonic),),
        # S_tan and P are not comparable, each is checked against its neighbours only
        "harmonic-lower": (
            PresetBranch(("A", "Ssinh", "Stan", "L"), Relation.harmonic),
            PresetBranch(("A", "Ssinh", "P", "L"), Relation.harmonic),
        ),
    }
)


def preset_chain_specs(name: str, grid: GridSpec | None = None) -> list[ChainSpec]:
    try:
        branches = PRESET_CHAINS[name]
    except KeyError:
        raise UnknownChainError(name) from None
    grid = grid or GridSpec.kyfan_default()
    return [ChainSpec(branch.mean_ids, branch.relation, grid) for branch in branches]


def verify_preset(
    name: str,
    grid: GridSpec | None = None,
    tolerance: float = CHECK_TOLERANCE,
    workers: int = 1,
) -> list[CheckReport]:
    return [
        report for chain in preset_chain_specs(name, grid) for report in verify_chain(chain, tolerance, workers)
    ]


MeanPair = tuple[str, str]

RATIO_PRESET_PAIRS: typing.Final[tuple[MeanPair, ...]] = (
    *zip(RATIO_CHAIN, RATIO_CHAIN[1:]),
    ("T", "Q"),
    ("Ar(-1)", "Ar(0)"),
    ("Ar(0)", "Ar(1)"),
    ("Ar(1/3)", "Ar(1/2)"),
    ("Ar(1)", "Ar(2)"),
    ("Ar(1/2)", "He"),
    ("He", "Ar(2/3)"),
    ("L", "Ar(1/3)"),
    ("Ssinh", "A"),
    ("Ar(1/2)", "P"),
    ("L", "Stan"),
)

HARMONIC_PRESET_PAIRS: typing.Final[tuple[MeanPair, ...]] = tuple(
    dict.fromkeys(
        pair
        for name in ("harmonic-upper", "harmonic-lower")
        for branch in PRESET_CHAINS[name]
        for pair in zip(branch.mean_ids, branch.mean_ids[1:])
    )
)


@dataclasses.dataclass(frozen=True)
class SoundnessRecord:
    """
    Hypotheses and conclusion for one ordered pair of means.
    """

    m_id: str
    n_id: str
    relation: Relation
    seiffert_hypothesis: CheckReport  # n/m decreasing, or m - n decreasing
    mean_hypothesis: CheckReport  # q increasing, or g decreasing
    conclusion: CheckReport  # the Ky Fan inequality itself

    @property
    def is_sound(self) -> bool:
        return not self.seiffert_hypothesis.passed or self.conclusion.passed

    @property
    def forms_agree(self) -> bool:
        return self.seiffert_hypothesis.passed == self.mean_hypothesis.passed

    def as_dict(self) -> dict[str, typing.Any]:
        return {
            "pair": [self.m_id, self.n_id],
            "relation": str(self.relation),
            "seiffert_hypothesis": str(self.seiffert_hypothesis.verdict),
            "mean_hypothesis": str(self.mean_hypothesis.verdict),
            "conclusion": str(self.conclusion.verdict),
            "sound": self.is_sound,
            "forms_agree": self.forms_agree,
        }

    def __str__(self) -> str:
        return (
            f"{self.relation} {self.m_id} <= {self.n_id}: "
            f"hypothesis {self.seiffert_hypothesis.verdict}/{self.mean_hypothesis.verdict}, "
            f"conclusion {self.conclusion.verdict}"
            f"{'' if self.is_sound else ' UNSOUND'}{'' if self.forms_agree else ' FORMS DISAGREE'}"
        )


def audit_pair(
    m_id: str,
    n_id: str,
    relation: Relation,
    grid: GridSpec | None = None,
    interval: IntervalGrid | None = None,
    tolerance: float = CHECK_TOLERANCE,
    workers: int = 1,
) -> SoundnessRecord:
    m, n = get_mean(m_id), get_mean(n_id)
    ms, ns = mean_to_seiffert(m), mean_to_seiffert(n)
    match relation:
        case Relation.ratio:
            seiffert_hypothesis = check_ratio_monotone(ms, ns, interval, tolerance)
            mean_hypothesis = check_q_increasing(m, n, interval, tolerance)
        case Relation.harmonic:
            seiffert_hypothesis = check_diff_decreasing(ms, ns, interval, tolerance)
            mean_hypothesis = check_g_decreasing(m, n, tolerance=tolerance)
    return SoundnessRecord(
        m_id=m_id,
        n_id=n_id,
        relation=relation,
        seiffert_hypothesis=seiffert_hypothesis,
        mean_hypothesis=mean_hypothesis,
        conclusion=check_pair(m_id, n_id, relation, grid, tolerance, workers),
    )


def with_reversed(pairs: Iterable[MeanPair]) -> list[MeanPair]:
    pairs = list(pairs)
    return pairs + [(n_id, m_id) for m_id, n_id in pairs]


def audit_soundness(
    ratio_pairs: Sequence[MeanPair] = RATIO_PRESET_PAIRS,
    harmonic_pairs: Sequence[MeanPair] = HARMONIC_PRESET_PAIRS,
    grid: GridSpec | None = None,
    interval: IntervalGrid | None = None,
    tolerance: float = CHECK_TOLERANCE,
    workers: int = 1,
) -> list[SoundnessRecord]:
    """
    Run both forms of the hypothesis and the conclusion for every pair and its reversal.
    """
    records = []
    for relation, pairs in ((Relation.ratio, ratio_pairs), (Relation.harmonic, harmonic_pairs)):
        for m_id, n_id in with_reversed(pairs):
            record = audit_pair(m_id, n_id, relation, grid, interval, tolerance, workers)
            log.debug("%s", record)
            records.append(record)
    return records


def main():
    for name in PRESET_CHAINS:
        print(f"{name}:")
        for report in verify_preset(name, GridSpec.square(1e-3, 0.5, 50)):
            print(f"  {report}")


if __name__ == "__main__":
    main()
