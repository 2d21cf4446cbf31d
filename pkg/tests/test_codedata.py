import pytest

from extremal72.codedata import (CLASSIFICATION_FILE, CODE_F_ROWS, Checkpoint, CodeRecord, Provenance, Stage,
                                 check_pairwise_inequivalent, checkpoint_read, checkpoint_write, format_codes, golay24,
                                 golay_order6, golay_standard_g, load_classification, load_codes, parse_codes,
                                 save_codes, validate_classification)
from extremal72.codes import LinearCode
from extremal72.exceptions import CheckpointMismatch, CodeFileError, MissingDataError
from extremal72.perms import is_automorphism, permute_code, standard_g

STORE = """# a comment line
# provenance: builtin reference code
F 12 6
111100000000
001111000000
000011110000
000000111100
000000001111
010101010101

tiny 4 1
1111
"""


def three_copies_of_f() -> CodeRecord:
    """ F + F + F: self-dual of length 36 but minimum distance 4. """
    rows = []
    for copy in range(3):
        rows += ['0' * (12 * copy) + row + '0' * (12 * (2 - copy)) for row in CODE_F_ROWS]
    return CodeRecord('FFF', 36, 18, tuple(rows), Provenance.INGESTED)


def test_parse_store():
    records = parse_codes(STORE)
    assert [record.name for record in records] == ['F', 'tiny']
    assert records[0].provenance is Provenance.BUILTIN
    assert records[0].note == 'reference code'
    assert records[1].provenance is Provenance.INGESTED
    assert records[0].code() == LinearCode.from_rows(12, CODE_F_ROWS)


def test_format_then_parse_keeps_records():
    records = parse_codes(STORE)
    assert parse_codes(format_codes(records)) == records


@pytest.mark.parametrize('text, line', [
    ('F 12\n1111\n', 1),
    ('F 4 2\n1111\n', 3),
    ('F 4 1\n11a1\n', 1),
    ('F 4 2\n1100\n1100\n', 1),
    ('F 4 1\n1111\n\nF 4 1\n1100\n', 4),
    ('# provenance: unknown\nF 4 1\n1111\n', 1),
])
def test_parse_errors_carry_a_line(text, line):
    with pytest.raises(CodeFileError) as raised:
        parse_codes(text)
    assert raised.value.line == line


def test_save_and_load(tmp_path, code_f):
    path = tmp_path / 'store' / 'codes.txt'
    save_codes([CodeRecord.from_code(code_f, note='copy')], path)
    loaded = load_codes(path)
    assert loaded[0].code() == code_f
    assert loaded[0].provenance is Provenance.PIPELINE
    assert loaded[0].note == 'copy'


def test_save_refuses_duplicate_names(tmp_path, code_f):
    record = CodeRecord.from_code(code_f)
    with pytest.raises(CodeFileError):
        save_codes([record, record], tmp_path / 'codes.txt')


def test_load_missing_store(tmp_path):
    with pytest.raises(MissingDataError):
        load_codes(tmp_path / 'absent.txt')
    with pytest.raises(MissingDataError):
        load_classification(tmp_path)


def test_validate_classification_rejects_bad_codes(code_f):
    with pytest.raises(CodeFileError):
        validate_classification([CodeRecord.from_code(code_f)])
    with pytest.raises(CodeFileError) as raised:
        validate_classification([three_copies_of_f()])
    assert raised.value.record == 'FFF'


def test_load_classification_validates(tmp_path):
    save_codes([three_copies_of_f()], tmp_path / CLASSIFICATION_FILE)
    with pytest.raises(CodeFileError):
        load_classification(tmp_path)


def test_checkpoint_round_trip(tmp_path):
    checkpoint = Checkpoint(Stage.SEARCH, 'abc123')
    checkpoint.mark_done('p0', {'found': []})
    checkpoint.mark_done('p1')
    path = tmp_path / 'search.ckpt'
    checkpoint_write(checkpoint, path)
    restored = checkpoint_read(path, expected_hash='abc123')
    assert restored == checkpoint
    assert restored.is_done('p1') and not restored.is_done('p2')


def test_checkpoint_refuses_other_configuration(tmp_path):
    path = tmp_path / 'search.ckpt'
    checkpoint_write(Checkpoint(Stage.L, 'abc123'), path)
    with pytest.raises(CheckpointMismatch):
        checkpoint_read(path, expected_hash='def456')


def test_checkpoint_bad_header(tmp_path):
    path = tmp_path / 'search.ckpt'
    path.write_text('not a checkpoint\n', encoding='utf-8')
    with pytest.raises(CheckpointMismatch):
        checkpoint_read(path)
    with pytest.raises(MissingDataError):
        checkpoint_read(tmp_path / 'absent.ckpt')


def test_pairwise_inequivalence_names_the_later_record(code_f, hamming8, random_permutation):
    moved = permute_code(code_f, random_permutation(12))
    records = [CodeRecord.from_code(code_f, 'first'), CodeRecord.from_code(hamming8, 'e8'),
               CodeRecord.from_code(moved, 'second')]
    check_pairwise_inequivalent(records[:2])
    with pytest.raises(CodeFileError) as raised:
        check_pairwise_inequivalent(records)
    assert raised.value.record == 'second'
    assert 'equivalent to first' in str(raised.value)


def test_golay_order6_automorphism():
    t = golay_order6()
    assert t.cycle_type() == {6: 4}
    assert is_automorphism(golay24(), t)
    moved = golay_standard_g()
    assert is_automorphism(moved, standard_g(4))
    assert moved.k == 12 and moved.name == 'G24g'
