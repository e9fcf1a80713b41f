import pytest

from alphabet import InvalidSymbolError, complement_base
from collection import (EmptyCollectionError, SeqCollection, build_collection, load_fasta, mate_of,
                        reverse_complement)
from oracle import random_reads


def test_build_collection_examples():
    c = build_collection(["AACGT"])
    assert c.text.tolist() == [2, 2, 3, 4, 5, 1, 2, 3, 4, 5, 5, 1]
    assert c.k == 1
    assert c.n == 12
    assert build_collection(["A"]).text.tolist() == [2, 1, 5, 1]


def test_empty_inputs():
    with pytest.raises(EmptyCollectionError):
        build_collection([])
    with pytest.raises(EmptyCollectionError):
        build_collection(["ACG", ""])


def test_invalid_symbol_names_record():
    with pytest.raises(InvalidSymbolError, match="r2"):
        build_collection(["ACG", "ANG"], names=["r1", "r2"])
    with pytest.raises(InvalidSymbolError):
        build_collection([[2, 1, 3]])


@pytest.mark.parametrize("pos,expected", [(1, 0), (6, 0), (7, 1), (12, 1)])
def test_string_id_of(pos, expected):
    c = build_collection(["AACGT"])
    assert c.string_id_of(pos) == expected


def test_string_id_of_out_of_range():
    c = build_collection(["AACGT"])
    with pytest.raises(IndexError):
        c.string_id_of(0)
    with pytest.raises(IndexError):
        c.string_id_of(13)


def test_mate_of():
    assert mate_of(0) == 1
    assert mate_of(5) == 4
    assert mate_of(mate_of(3)) == 3


def test_strings_are_interleaved_reverse_complements(rng):
    reads = random_reads(rng, 5)
    c = build_collection(reads)
    assert c.num_strings == 10
    assert c.n == sum(2 * (len(r) + 1) for r in reads)
    for i, read in enumerate(reads):
        assert c.letters(2 * i) == read
        assert c.string(2 * i + 1).tolist() == reverse_complement(c.string(2 * i).tolist())
    start, end = c.string_bounds(3)
    assert c.text[end - 1] == 1
    assert c.string_id_of(start) == 3


def test_closure_property(rng):
    # aXb 出现则 π(b)X̂π(a) 也出现
    c = build_collection(random_reads(rng, 3, 8, 15))
    text = c.text.tolist()
    windows = {tuple(text[i:i + 4]) for i in range(len(text) - 3) if 1 not in text[i:i + 4]}
    for w in windows:
        mirrored = tuple(complement_base(s) for s in reversed(w))
        assert mirrored in windows


def test_from_text_checks():
    with pytest.raises(ValueError):
        SeqCollection.from_text([2, 3])
    with pytest.raises(ValueError):
        SeqCollection.from_text([2, 1])


def test_load_fasta(fasta_file):
    path = fasta_file([("r0", "acgtacgtAACCGGTT"), ("r1", "TTTG")])
    c = load_fasta(path)
    assert c.k == 2
    assert c.names == ("r0", "r1")
    assert c.letters(0) == "ACGTACGTAACCGGTT"
    assert c.letters(3) == "CAAA"


def test_load_fasta_rejects_n(fasta_file):
    path = fasta_file([("good", "ACGT"), ("bad", "ACGNNT")])
    with pytest.raises(InvalidSymbolError, match="bad"):
        load_fasta(path)


def test_load_fasta_empty(fasta_file):
    path = fasta_file([])
    with pytest.raises(EmptyCollectionError):
        load_fasta(path)
