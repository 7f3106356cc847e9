"""Integer-sequence client: b-file parsing and prefix matching."""

import pytest

from umbral_stats import catalog as cat
from umbral_stats import oeis


class TestBFileParsing:
    def test_parses_index_value_lines(self):
        text = "# comment\n0 1\n1 1\n2 2\n3 5\n"
        assert oeis.parse_b_file(text) == [1, 1, 2, 5]

    def test_skips_blank_lines(self):
        assert oeis.parse_b_file("\n1 7\n\n2 9\n") == [7, 9]

    def test_error_names_offending_line(self):
        with pytest.raises(ValueError, match="line 2"):
            oeis.parse_b_file("1 2\nbogus\n")
        with pytest.raises(ValueError, match="non-integer"):
            oeis.parse_b_file("1 x\n")

    def test_rejects_malformed_id(self):
        with pytest.raises(ValueError, match="not an OEIS id"):
            oeis.fetch_sequence("108")


class TestPrefixMatching:
    def test_plain_match(self):
        assert oeis.matching_prefix([1, 2, 3], [1, 2, 3, 4], absolute=False) == 3

    def test_stops_at_mismatch(self):
        assert oeis.matching_prefix([1, 2, 9], [1, 2, 3], absolute=False) == 2

    def test_absolute_comparison(self):
        assert oeis.matching_prefix([1, -2, 2], [1, 2, -2], absolute=True) == 3

    def test_reference_offset(self):
        assert oeis.matching_prefix([2, 5], [1, 2, 5], absolute=False, seq_offset=1) == 2


class TestFixtureChecks:
    def test_offline_check_passes(self):
        check = oeis.check_entry_quantity("mitt" + "ag-leffler", "X_of_w")
        assert check.passed and check.source == "offline"
        assert check.oeis_id == "A000108"

    def test_explicit_mismatched_id_rejected(self):
        with pytest.raises(ValueError, match="references"):
            oeis.check_entry_quantity("mott", "Y", "A000108")

    def test_no_sequence_reference(self):
        (fixture,) = [f for f in cat.fixtures("gould") if f.quantity == "F"]
        with pytest.raises(ValueError, match="no sequence reference"):
            oeis.check_fixture(fixture)

    def test_unknown_embedded_sequence(self):
        with pytest.raises(cat.CatalogError, match="no embedded terms"):
            cat.offline_sequence("A999999")
