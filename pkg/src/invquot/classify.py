"""Run profile derivation, enumeration and exclusions for one K_S^2."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .branch import BranchConfig, Enumeration, enumerate_with_trace
from .profile import QuotientProfile, allowed_k, quotient_profile
from .rules import ExclusionRule, Provenance, Stage, Verdict, all_rules, apply_exclusions, builtin_rules


@dataclass
class Cell:
    kw2: int
    enumeration: Enumeration
    verdicts: list[Verdict]

    @property
    def generated(self) -> list[BranchConfig]:
        return self.enumeration.configs

    @property
    def admitted(self) -> list[BranchConfig]:
        return [v.config for v in self.verdicts if v.admitted]

    @property
    def excluded(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.admitted]


@dataclass
class Section:
    profile: QuotientProfile
    cells: list[Cell] = field(default_factory=list)

    @property
    def omitted(self) -> bool:
        # B0 is not classified when the bicanonical map is composed with the involution
        return self.profile.bicanonical_composed

    def cell(self, kw2: int) -> Cell:
        for c in self.cells:
            if c.kw2 == kw2:
                return c
        raise KeyError(kw2)


@dataclass
class Classification:
    ks2: int
    sections: list[Section]
    rules: list[ExclusionRule]

    @property
    def numeric_only(self) -> bool:
        return all(s.profile.numeric_only for s in self.sections)

    def section(self, k: int) -> Section:
        for s in self.sections:
            if s.profile.k == k:
                return s
        raise KeyError(k)

    def geometric_exclusions(self) -> list[str]:
        """Distinct GEOMETRIC branch rules that excluded at least one configuration."""
        geometric = {r.id for r in self.rules if r.provenance is Provenance.GEOMETRIC}
        fired = {rid for s in self.sections for c in s.cells for v in c.excluded for rid in v.matched}
        return sorted(fired & geometric)

    def geometric_profile_rules(self) -> list[str]:
        ids = {rid for s in self.sections for a in s.profile.admissible for rid in a.constrained_by}
        geometric = {r.id for r in all_rules() if r.provenance is Provenance.GEOMETRIC and r.stage is Stage.PROFILE}
        return sorted(ids & geometric)


def classify(ks2: int, k: Optional[int] = None, kw2: Optional[int] = None,
             extra_rules: Iterable[ExclusionRule] = (), enumerate_composed: bool = False) -> Classification:
    rules = builtin_rules() + list(extra_rules)
    ks = allowed_k(ks2)
    if k is not None:
        if k not in ks:
            raise ValueError(f"k={k} is not admissible for K_S^2={ks2}; allowed: {ks}")
        ks = [k]
    sections = []
    for kk in ks:
        profile = quotient_profile(ks2, kk)
        section = Section(profile)
        if not profile.bicanonical_composed or enumerate_composed:
            for w in profile.kw2_values():
                if kw2 is not None and w != kw2:
                    continue
                en = enumerate_with_trace(profile, w)
                section.cells.append(Cell(w, en, apply_exclusions(en.configs, rules, (ks2, kk, w))))
        sections.append(section)
    return Classification(ks2, sections, rules)


def admitted_configs(ks2: int, k: int, kw2: int) -> list[BranchConfig]:
    return classify(ks2, k, kw2, enumerate_composed=True).section(k).cell(kw2).admitted
