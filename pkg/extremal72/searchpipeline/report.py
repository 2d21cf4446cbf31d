""" The line-oriented search report.

        extremal72 search report v1
        config <hash>
        candidate <key> reps=<r1,...> h=<h1,...> P=<n> T=<n> Q=<n> F=<n> S=<n> found=<n>
        verdict <text>
        time <seconds>          (only with timings)
"""

from dataclasses import dataclass, field
from typing import Optional

from .sieve import SieveState, stage_names

REPORT_HEADER = 'extremal72 search report v1'
VERDICT_NONE = 'no code exists with an order-6 automorphism'
VERDICT_INCOMPLETE = 'incomplete'


@dataclass
class CandidateSummary:
    """ Per-candidate line of the report. """
    key: str
    representative_counts: list[int]
    h_sizes: list[int]
    stage_counts: list[tuple[str, int]]
    found: int

    @classmethod
    def from_state(cls, state: SieveState) -> 'CandidateSummary':
        names = stage_names(len(state.h_sets))
        counts = [(name, int(state.stage_counts.get(name, 0))) for name in names]
        return cls(state.key, list(state.representative_counts), state.h_sizes, counts, len(state.found))


@dataclass
class SearchReport:
    config_hash: str
    candidates: list[CandidateSummary] = field(default_factory=list)
    complete: bool = True
    found_in: list[str] = field(default_factory=list)
    wall_time: Optional[float] = None

    @classmethod
    def from_states(cls, config_hash: str, states: list[SieveState], wall_time: Optional[float] = None):
        return cls(
            config_hash=config_hash,
            candidates=[CandidateSummary.from_state(state) for state in states],
            complete=all(state.complete for state in states),
            found_in=[state.key for state in states if state.found],
            wall_time=wall_time,
        )

    @property
    def verdict(self) -> str:
        if not self.complete:
            return VERDICT_INCOMPLETE
        if self.found_in:
            return 'extremal code found for ' + ','.join(self.found_in)
        return VERDICT_NONE


def _numbers(values: list[int]) -> str:
    return ','.join(str(value) for value in values) or '-'


def render_report(report: SearchReport, timings: bool = False) -> str:
    """ Report text; the wall time only appears with `timings`. """
    lines = [REPORT_HEADER, f'config {report.config_hash}']
    for candidate in report.candidates:
        stages = ' '.join(f'{name}={count}' for name, count in candidate.stage_counts)
        parts = [f'candidate {candidate.key}', f'reps={_numbers(candidate.representative_counts)}',
                 f'h={_numbers(candidate.h_sizes)}']
        if stages:
            parts.append(stages)
        parts.append(f'found={candidate.found}')
        lines.append(' '.join(parts))
    lines.append(f'verdict {report.verdict}')
    if timings and report.wall_time is not None:
        lines.append(f'time {report.wall_time:.1f}')
    return '\n'.join(lines) + '\n'


def parse_report(text: str) -> dict:
    """ Reads a rendered report back into plain data; raises ValueError on a malformed report. """
    lines = text.splitlines()
    if not lines or lines[0] != REPORT_HEADER:
        raise ValueError('Invalid report: missing header')
    if len(lines) < 3 or not lines[1].startswith('config '):
        raise ValueError('Invalid report: missing config line')
    parsed: dict = {'config': lines[1].split(' ', 1)[1], 'candidates': [], 'verdict': None, 'time': None}
    for line in lines[2:]:
        word, _, rest = line.partition(' ')
        if word == 'candidate':
            fields = rest.split()
            entry = {'key': fields[0]}
            for item in fields[1:]:
                name, _, value = item.partition('=')
                entry[name] = value
            parsed['candidates'].append(entry)
        elif word == 'verdict':
            parsed['verdict'] = rest
        elif word == 'time':
            parsed['time'] = float(rest)
        else:
            raise ValueError(f'Invalid report line: "{line}"')
    if parsed['verdict'] is None:
        raise ValueError('Invalid report: missing verdict')
    return parsed
