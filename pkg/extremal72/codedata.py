""" Reference codes, the text code store, validation of the ingested [36,18,8] classification, and checkpoints.

    Code store format, one record per block, records separated by blank lines:

        # provenance: ingested <free text note>
        D1 36 18
        1000...
        ...

    Comment lines start with `#`; a provenance comment applies to the record that follows it. """

from dataclasses import dataclass, field
from enum import Enum
import logging
import os
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .codes import DEFAULT_ENUM_BUDGET, LinearCode, classify, min_weight_below, minimum_weight
from .equivalence import DEFAULT_GROUP_CAP, automorphism_group, canonical_key
from .exceptions import CheckpointMismatch, CodeFileError, MissingDataError
from .gf2linalg import full_mask
from .helpers.files import atomic_write_text, read_text, json_lines
from .helpers.messaging import StageMessage, loads
from .perms import Permutation, conjugator, is_automorphism, permute_code, standard_g

logger = logging.getLogger(__name__)

CLASSIFICATION_FILE = 'classification_36_18_8.txt'
CHECKPOINT_MAGIC = 'extremal72-checkpoint'
CHECKPOINT_VERSION = 'v1'
GOLAY_ORDER6_TRACE = 7

CODE_F_ROWS = (
    '111100000000',
    '001111000000',
    '000011110000',
    '000000111100',
    '000000001111',
    '010101010101',
)


class Provenance(Enum):
    """ Where a stored code came from. """
    BUILTIN = "builtin"
    INGESTED = "ingested"
    PIPELINE = "pipeline"

    @classmethod
    def from_string(cls, value: str):
        """ Get Provenance object from lower case `str`. """
        try:
            return cls(value)
        except ValueError as e:
            raise ValueError(f"Invalid provenance: {value}") from e


@dataclass(frozen=True)
class CodeRecord:
    """ A named generator matrix as stored on disk. """
    name: str
    n: int
    k: int
    rows: tuple[str, ...]
    provenance: Provenance = Provenance.BUILTIN
    note: str = ''

    @classmethod
    def from_code(cls, code: LinearCode, name: Optional[str] = None, provenance: Provenance = Provenance.PIPELINE,
                  note: str = '') -> 'CodeRecord':
        name = name or code.name
        if not name or any(ch.isspace() for ch in name):
            raise CodeFileError(f'record name must be a single non-empty token, got "{name}"')
        return cls(name, code.n, code.k, tuple(code.to_strings()), provenance, note)

    def code(self) -> LinearCode:
        return LinearCode.from_rows(self.n, self.rows, name=self.name)

    def validate(self):
        """ Width and rank checks; raises `CodeFileError` naming the record. """
        if len(self.rows) != self.k:
            raise CodeFileError(f'expected {self.k} rows, found {len(self.rows)}', record=self.name)
        for row in self.rows:
            if len(row) != self.n or set(row) - {'0', '1'}:
                raise CodeFileError(f'row "{row}" is not a 0/1 string of length {self.n}', record=self.name)
        if self.code().k != self.k:
            raise CodeFileError(f'rows have rank {self.code().k}, expected {self.k}', record=self.name)


def golay24() -> LinearCode:
    """ The extended binary Golay code: a quadratic-residue code of length 23 extended by an overall parity bit.

    The residue and non-residue idempotents (with and without the constant term) are tried in turn; the first one
    whose cyclic span has dimension 12 and whose extension has minimum distance 8 is used.
    """
    p = 23
    residues = sorted({(x * x) % p for x in range(1, p)})
    non_residues = [x for x in range(1, p) if x not in residues]
    candidates = []
    for exponents in (residues, non_residues):
        polynomial = sum(1 << e for e in exponents)
        candidates += [polynomial, polynomial | 1]
    mask = full_mask(p)
    for polynomial in candidates:
        shifts = [((polynomial << s) | (polynomial >> (p - s))) & mask for s in range(p)]
        rows = [row | ((row.bit_count() & 1) << p) for row in shifts]
        code = LinearCode.from_rows(p + 1, rows, name='G24')
        if code.k == 12 and minimum_weight(code) == 8:
            flags = classify(code)
            if not (flags.self_dual and flags.doubly_even):
                raise AssertionError('extended quadratic-residue code is not self-dual doubly-even')
            return code
    raise AssertionError('no quadratic-residue idempotent of length 23 gave the Golay code')


def code_F() -> LinearCode:
    # pylint: disable-msg=invalid-name
    """ The self-dual [12,6,4] code with the fixed generator matrix M. """
    return LinearCode.from_rows(12, CODE_F_ROWS, name='F')


def golay_order6() -> Permutation:
    """ x -> 7 - 1/x on the projective line over F_23, infinity being the parity coordinate of `golay24()`.

    The matrix [[7, -1], [1, 0]] has determinant 1 and an irreducible characteristic polynomial whose roots are
    primitive 12th roots of unity, so the map is an automorphism of the Golay code with four 6-cycles. """
    p = 23
    infinity = p
    images = [0] * (p + 1)
    images[0] = infinity
    images[infinity] = GOLAY_ORDER6_TRACE
    for x in range(1, p):
        images[x] = (GOLAY_ORDER6_TRACE - pow(x, -1, p)) % p
    return Permutation(tuple(images))


def golay_standard_g() -> LinearCode:
    """ The Golay code moved so that the standard g on four blocks is an automorphism. """
    g = standard_g(4)
    p = conjugator(golay_order6(), g)
    if p is None:
        raise AssertionError('x -> 7 - 1/x is not conjugate to the standard g')
    moved = permute_code(golay24(), p, name='G24g')
    if not is_automorphism(moved, g):
        raise AssertionError('the standard g is not an automorphism of the moved Golay code')
    return moved


def parse_codes(text: str) -> list[CodeRecord]:
    """ Parses the text code store format.

    Args:
        text (str): File contents.

    Returns:
        list[CodeRecord]: Records in file order, each validated.
    """
    records = []
    names: set[str] = set()
    provenance, note = Provenance.INGESTED, ''
    header: Optional[tuple[str, int, int, int]] = None
    rows: list[str] = []

    def close(line_number: int):
        nonlocal header, rows, provenance, note
        if header is None:
            return
        name, n, k, start = header
        if len(rows) != k:
            raise CodeFileError(f'expected {k} rows, found {len(rows)}', line=line_number, record=name)
        record = CodeRecord(name, n, k, tuple(rows), provenance, note)
        try:
            record.validate()
        except CodeFileError as e:
            raise CodeFileError(str(e), line=start) from e
        records.append(record)
        header, rows = None, []
        provenance, note = Provenance.INGESTED, ''

    lines = text.splitlines()
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line.startswith('#'):
            body = line[1:].strip()
            if body.startswith('provenance:'):
                if header is not None:
                    close(number)
                parts = body[len('provenance:'):].strip().split(maxsplit=1)
                if not parts:
                    raise CodeFileError('empty provenance comment', line=number)
                try:
                    provenance = Provenance.from_string(parts[0])
                except ValueError as e:
                    raise CodeFileError(str(e), line=number) from e
                note = parts[1] if len(parts) > 1 else ''
            continue
        if not line:
            close(number)
            continue
        if header is None:
            fields = line.split()
            if len(fields) != 3:
                raise CodeFileError(f'expected header "name n k", got "{line}"', line=number)
            name = fields[0]
            try:
                n, k = int(fields[1]), int(fields[2])
            except ValueError as e:
                raise CodeFileError(f'non-integer length or dimension in "{line}"', line=number) from e
            if n <= 0 or not 0 <= k <= n:
                raise CodeFileError(f'invalid parameters [{n},{k}]', line=number, record=name)
            if name in names:
                raise CodeFileError('duplicate record name', line=number, record=name)
            names.add(name)
            header = (name, n, k, number)
            continue
        if len(rows) >= header[2]:
            raise CodeFileError(f'more than {header[2]} rows', line=number, record=header[0])
        rows.append(line)
    close(len(lines) + 1)
    return records


def load_codes(path: Union[str, os.PathLike]) -> list[CodeRecord]:
    """ Reads and validates a code store. """
    if not os.path.exists(path):
        raise MissingDataError(f'code store {path} not found')
    records = parse_codes(read_text(path))
    logger.debug('loaded %s codes from %s', len(records), path)
    return records


def format_codes(records: Iterable[CodeRecord]) -> str:
    blocks = []
    for record in records:
        lines = []
        if record.provenance is not Provenance.INGESTED or record.note:
            lines.append(f'# provenance: {record.provenance.value} {record.note}'.rstrip())
        lines.append(f'{record.name} {record.n} {record.k}')
        lines.extend(record.rows)
        blocks.append('\n'.join(lines))
    return '\n\n'.join(blocks) + ('\n' if blocks else '')


def save_codes(records: Iterable[CodeRecord], path: Union[str, os.PathLike]):
    """ Validates every record and writes the store atomically. """
    records = list(records)
    names = set()
    for record in records:
        record.validate()
        if record.name in names:
            raise CodeFileError('duplicate record name', record=record.name)
        names.add(record.name)
    atomic_write_text(path, format_codes(records))


def check_pairwise_inequivalent(records: Sequence[CodeRecord], budget: int = DEFAULT_ENUM_BUDGET):
    """ Raises `CodeFileError` naming the later of the first two records whose codes are equivalent. """
    seen: dict[bytes, str] = {}
    for record in records:
        key = canonical_key(record.code(), budget)
        if key in seen:
            raise CodeFileError(f'code is equivalent to {seen[key]}', record=record.name)
        seen[key] = record.name


def validate_classification(records: list[CodeRecord], expected_count: int = 41) -> list[StageMessage]:
    """ Checks an ingested [36,18,8] classification: every record self-dual with minimum distance exactly 8,
        no two records equivalent, and the expected number of records. Raises `CodeFileError` on the first bad
        record. """
    messages = []
    for record in records:
        code = record.code()
        if (code.n, code.k) != (36, 18):
            raise CodeFileError(f'expected a [36,18] code, got [{code.n},{code.k}]', record=record.name)
        if not classify(code).self_dual:
            raise CodeFileError('code is not self-dual', record=record.name)
        if min_weight_below(code, 8) is not None:
            raise CodeFileError('code has a word of weight below 8', record=record.name)
        if min_weight_below(code, 9) is None:
            raise CodeFileError('code has no word of weight 8', record=record.name)
    check_pairwise_inequivalent(records)
    if len(records) != expected_count:
        messages.append(StageMessage.warning(
            f'classification holds {len(records)} codes, the published count is {expected_count}', 'classification'))
    messages.append(StageMessage.info(f'{len(records)} pairwise inequivalent self-dual [36,18,8] codes validated',
                                      'classification'))
    return messages


def load_classification(data_dir: Union[str, os.PathLike], expected_count: int = 41) -> list[CodeRecord]:
    """ The ingested classification from `<data_dir>/classification_36_18_8.txt`, validated. """
    path = Path(data_dir) / CLASSIFICATION_FILE
    if not path.exists():
        raise MissingDataError(f'the [36,18,8] classification is not available at {path}; ingest it with '
                               f'"extremal72 ingest <file>"')
    records = load_codes(path)
    for message in validate_classification(records, expected_count):
        logger.log(logging.WARNING if message.severity.value == 'warning' else logging.INFO, '%s', message)
    return records


def order3_eligible(records: Iterable[CodeRecord], group_cap: int = DEFAULT_GROUP_CAP,
                    budget: int = DEFAULT_ENUM_BUDGET) -> list[tuple[CodeRecord, list[Permutation]]]:
    """ Records whose automorphism group contains an element of order 3 moving every point, each with one such
        element per conjugacy class of the group. """
    records = list(records)
    eligible = []
    for record in records:
        group = automorphism_group(record.code(), budget)
        if group.order % 3:
            continue
        representatives = group.conjugacy_representatives(3, record.n, group_cap)
        if representatives:
            eligible.append((record, representatives))
    logger.info('%s of %s codes admit a fixed-point-free automorphism of order 3', len(eligible), len(records))
    return eligible


class Stage(Enum):
    """ Pipeline stages a checkpoint can belong to. """
    AG = "AG"
    C36 = "C36"
    L = "L"
    LPRIME = "Lprime"
    SEARCH = "search"

    @classmethod
    def from_string(cls, value: str):
        """ Get Stage object from `str`. """
        try:
            return cls(value)
        except ValueError as e:
            raise ValueError(f"Invalid stage: {value}") from e


@dataclass
class Checkpoint:
    """ Resumable state of a stage: the keys of completed items and per-item partial state. """
    stage: Stage
    config_hash: str
    completed: list[str] = field(default_factory=list)
    state: dict[str, object] = field(default_factory=dict)

    def mark_done(self, key: str, result: object = None):
        if key not in self.completed:
            self.completed.append(key)
        if result is None:
            self.state.pop(key, None)
        else:
            self.state[key] = result

    def is_done(self, key: str) -> bool:
        return key in self.completed


def checkpoint_write(checkpoint: Checkpoint, path: Union[str, os.PathLike]):
    """ Writes the checkpoint atomically: a version/hash header and one json object per line. """
    records: list[dict] = [{'kind': 'stage', 'stage': checkpoint.stage.value}]
    records += [{'kind': 'completed', 'key': key} for key in checkpoint.completed]
    records += [{'kind': 'state', 'key': key, 'value': checkpoint.state[key]} for key in sorted(checkpoint.state)]
    header = f'{CHECKPOINT_MAGIC} {CHECKPOINT_VERSION} {checkpoint.config_hash}'
    atomic_write_text(path, header + '\n' + json_lines(records))


def checkpoint_read(path: Union[str, os.PathLike], expected_hash: Optional[str] = None) -> Checkpoint:
    """ Reads a checkpoint and refuses it when the format version or the config hash differ.

    Args:
        path: Checkpoint file.
        expected_hash (Optional[str]): Hash of the current run configuration.

    Returns:
        Checkpoint: The stored state.
    """
    if not os.path.exists(path):
        raise MissingDataError(f'checkpoint {path} not found')
    lines = read_text(path).splitlines()
    header = lines[0].split() if lines else []
    if len(header) != 3 or header[0] != CHECKPOINT_MAGIC:
        raise CheckpointMismatch(f'{path} is not a checkpoint file')
    if header[1] != CHECKPOINT_VERSION:
        raise CheckpointMismatch(f'checkpoint format {header[1]} is not {CHECKPOINT_VERSION}')
    if expected_hash is not None and header[2] != expected_hash:
        raise CheckpointMismatch(f'checkpoint was written with configuration {header[2][:12]}, '
                                 f'current configuration is {expected_hash[:12]}; refusing to resume')
    stage = None
    completed: list[str] = []
    state: dict[str, object] = {}
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            record = loads(line)
        except ValueError as e:
            raise CheckpointMismatch(f'line {number}: unreadable record') from e
        kind = record.get('kind') if isinstance(record, dict) else None
        if kind == 'stage':
            stage = Stage.from_string(record['stage'])
        elif kind == 'completed':
            completed.append(record['key'])
        elif kind == 'state':
            state[record['key']] = record['value']
        else:
            raise CheckpointMismatch(f'line {number}: unknown record kind {kind}')
    if stage is None:
        raise CheckpointMismatch(f'{path} has no stage record')
    return Checkpoint(stage, header[2], completed, state)