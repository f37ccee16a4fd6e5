import pytest
from hypothesis import given, strategies as st

from gendered_terms.genderlex import (
    FEMALE,
    MALE,
    UNGENDERED,
    BadFrequency,
    GenderLexicon,
    LexiconEntry,
    MalformedLexiconRow,
    build_lexicon,
    extract_first_name,
    infer_gender,
)


def _rows(pairs):
    return [f"{name:<15}{freq:.3f} 0.000 {i}" for i, (name, freq) in enumerate(pairs, 1)]


def test_single_sided_name_has_full_dominance():
    lex = build_lexicon(_rows([("ZED", 0.5)]), _rows([]))
    assert lex.get("zed") == LexiconEntry(MALE, 1.0, 1)


def test_dominance_from_both_files():
    # 0.146 / (0.146 + 0.012) = 0.9240...
    lex = build_lexicon(_rows([("DANA", 0.146)]), _rows([("DANA", 0.012)]))
    e = lex.get("dana")
    assert e.gender == MALE
    assert e.dominance == pytest.approx(0.146 / 0.158, abs=1e-12)
    assert round(e.dominance, 3) == 0.924


def test_below_threshold_excluded():
    lex = build_lexicon(_rows([("JO", 0.06)]), _rows([("JO", 0.04)]))
    assert "jo" not in lex


def test_popularity_cutoff_and_ties():
    male = _rows([("AAA", 0.3), ("BBB", 0.2), ("CCC", 0.2)])
    lex = build_lexicon(male, _rows([]), top=2)
    assert set(lex.entries) == {"aaa", "bbb"}  # bbb beats ccc alphabetically
    assert lex.get("bbb").rank == 2


def test_malformed_rows():
    with pytest.raises(MalformedLexiconRow):
        build_lexicon(["JAMES 3.318 3.318"], [])
    with pytest.raises(BadFrequency):
        build_lexicon(["JAMES abc 3.318 1"], [])
    with pytest.raises(BadFrequency):
        build_lexicon(["JAMES -1.0 3.318 1"], [])


def test_csv_round_trip(tmp_path, lexicon):
    p = tmp_path / "lex.csv"
    lexicon.to_csv(p)
    back = GenderLexicon.from_csv(p)
    assert len(back) == len(lexicon)
    assert back.get("sarah").gender == FEMALE
    assert back.get("mike").rank == lexicon.get("mike").rank
    assert p.read_text().splitlines()[0] == "name,gender,dominance,rank"


def test_bundled_lexicon_invariants(lexicon):
    for name, e in lexicon.entries.items():
        assert e.dominance >= 0.90
        assert 1 <= e.rank <= 10_000
        assert name.isalpha() and name == name.lower()
        assert e.gender in (FEMALE, MALE)


def test_sarah_clears_census_filters(lexicon):
    e = lexicon.get("sarah")
    assert e is not None and e.gender == FEMALE and e.dominance >= 0.9


@pytest.mark.parametrize("username,expected", [
    ("MikeTheWall", "mike"),
    ("Mike33", "mike"),
    ("MIKE42", "mike"),
    ("sarah_j", "sarah"),
    ("__anon__", None),
    ("_Mike_", None),
    ("42mike", None),
    ("mike-smith", "mike"),
    ("McDonald", "mc"),
    ("alphabet", "alphabet"),
    ("JoséGarcia", "josé"),
])
def test_extract_first_name(username, expected):
    assert extract_first_name(username) == expected


def test_infer_gender(lexicon):
    assert infer_gender("MikeTheWall", lexicon).value == MALE
    assert infer_gender("sarah_j", lexicon).value == FEMALE
    assert infer_gender("qwertyuiop", lexicon).value == UNGENDERED
    assert infer_gender("qwertyuiop", lexicon).matched_name is None
    assert infer_gender("MikeTheWall", lexicon).matched_name == "mike"


def test_whole_token_matching(lexicon):
    assert "al" in lexicon
    assert infer_gender("alphabet", lexicon).value == UNGENDERED
    assert infer_gender("Al99", lexicon).value == MALE


@given(st.text(min_size=1, max_size=25))
def test_extract_is_prefix_of_letter_run(username):
    name = extract_first_name(username)
    if name is None:
        return
    run = ""
    for ch in username:
        if not ch.isalpha():
            break
        run += ch
    assert any(run[:k].lower() == name for k in range(1, len(run) + 1))


@given(st.text(min_size=1, max_size=25))
def test_infer_gender_consistent(username):
    lex = GenderLexicon({"mike": LexiconEntry(MALE, 1.0, 1), "sarah": LexiconEntry(FEMALE, 1.0, 2)})
    g = infer_gender(username, lex)
    assert g == infer_gender(username, lex)
    if g.value == UNGENDERED:
        assert g.matched_name is None
    else:
        assert g.matched_name in lex.entries
