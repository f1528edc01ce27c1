import pytest
from hypothesis import given, settings

from mlresample import MulanFormatError, parse_mulan, write_mulan
from mlresample.arff import parse_label_header

from conftest import datasets, make_dataset
from mlresample import AttributeSpec

XML_TWO = """<?xml version="1.0" encoding="utf-8"?>
<labels xmlns="http://mulan.sourceforge.net/labels">
  <label name="p"></label>
  <label name="q"></label>
</labels>
"""

DENSE_TWO = """@relation demo
@attribute height numeric
@attribute color {red,blue}
@attribute p {0,1}
@attribute q {0,1}
@data
1.0,red,1,0
2.0,blue,0,1
"""


class TestParseDense:
    def test_two_by_two(self):
        d = parse_mulan(DENSE_TWO, XML_TWO)
        assert d.n == 2 and d.k == 2
        assert d.name == "demo"
        assert [a.name for a in d.attributes] == ["height", "color"]
        assert d.labels == ("p", "q")
        assert d.instances[0].features == (1.0, 0)
        assert d.instances[0].labels.indices == (0,)
        assert d.instances[1].labels.indices == (1,)

    def test_comments_and_blank_lines_skipped(self):
        text = "% header comment\n" + DENSE_TWO.replace("@data", "@data\n% row comment\n")
        d = parse_mulan(text, XML_TWO)
        assert d.n == 2

    def test_missing_value_token(self):
        text = DENSE_TWO.replace("1.0,red,1,0", "?,red,1,0")
        d = parse_mulan(text, XML_TWO)
        assert d.instances[0].features == (None, 0)

    def test_quoted_values(self):
        text = DENSE_TWO.replace("{red,blue}", "{'red hat',blue}").replace(
            "1.0,red,1,0", "1.0,'red hat',1,0"
        )
        d = parse_mulan(text, XML_TWO)
        assert d.instances[0].features == (1.0, 0)

    def test_case_insensitive_keywords(self):
        text = DENSE_TWO.replace("@relation", "@RELATION").replace("@data", "@DATA")
        assert parse_mulan(text, XML_TWO).n == 2


class TestParseSparse:
    def test_sparse_row_defaults(self):
        text = DENSE_TWO.replace("1.0,red,1,0\n2.0,blue,0,1", "{0 3.5, 3 1}")
        d = parse_mulan(text, XML_TWO)
        assert d.instances[0].features == (3.5, 0)
        assert d.instances[0].labels.indices == (1,)

    def test_empty_sparse_row(self):
        text = DENSE_TWO.replace("1.0,red,1,0\n2.0,blue,0,1", "{}")
        d = parse_mulan(text, XML_TWO)
        assert d.instances[0].features == (0.0, 0)
        assert not d.instances[0].labels

    def test_duplicate_sparse_index(self):
        text = DENSE_TWO.replace("1.0,red,1,0\n2.0,blue,0,1", "{0 1.0, 0 2.0}")
        with pytest.raises(MulanFormatError, match="duplicate sparse index"):
            parse_mulan(text, XML_TWO)

    def test_sparse_index_out_of_range(self):
        text = DENSE_TWO.replace("1.0,red,1,0\n2.0,blue,0,1", "{9 1}")
        with pytest.raises(MulanFormatError, match="out of range"):
            parse_mulan(text, XML_TWO)


class TestParseErrors:
    def test_xml_label_missing_from_arff(self):
        xml = XML_TWO.replace('name="q"', 'name="zz"')
        with pytest.raises(MulanFormatError, match="'zz'"):
            parse_mulan(DENSE_TWO, xml)

    def test_non_binary_label_value(self):
        text = DENSE_TWO.replace("@attribute q {0,1}", "@attribute q numeric").replace(
            "2.0,blue,0,1", "2.0,blue,0,7"
        )
        with pytest.raises(MulanFormatError, match="non-binary"):
            parse_mulan(text, XML_TWO)

    def test_nominal_value_not_declared(self):
        text = DENSE_TWO.replace("2.0,blue,0,1", "2.0,green,0,1")
        with pytest.raises(MulanFormatError, match="'green'") as err:
            parse_mulan(text, XML_TWO)
        assert err.value.line == 8

    def test_wrong_column_count_reports_line(self):
        text = DENSE_TWO.replace("2.0,blue,0,1", "2.0,blue,0")
        with pytest.raises(MulanFormatError, match="line 8"):
            parse_mulan(text, XML_TWO)

    def test_unsupported_attribute_kind(self):
        text = DENSE_TWO.replace("@attribute height numeric", "@attribute height string")
        with pytest.raises(MulanFormatError, match="unsupported type"):
            parse_mulan(text, XML_TWO)

    def test_missing_data_section(self):
        with pytest.raises(MulanFormatError, match="@data"):
            parse_mulan("@relation x\n@attribute a numeric\n", XML_TWO)


class TestLabelOrdering:
    def test_xml_order_defines_label_indices(self):
        xml_swapped = XML_TWO.replace(
            '<label name="p"></label>\n  <label name="q"></label>',
            '<label name="q"></label>\n  <label name="p"></label>',
        )
        d = parse_mulan(DENSE_TWO, xml_swapped)
        assert d.labels == ("q", "p")
        assert d.instances[0].labels.indices == (1,)  # p is now index 1

    def test_label_columns_before_features(self):
        text = """@relation demo
@attribute p {0,1}
@attribute q {0,1}
@attribute height numeric
@data
1,0,1.0
0,1,2.0
"""
        d = parse_mulan(text, XML_TWO)
        assert [a.name for a in d.attributes] == ["height"]
        assert d.instances[0].features == (1.0,)
        assert d.instances[0].labels.indices == (0,)


class TestLabelHeader:
    def test_nested_labels_flattened(self):
        xml = """<labels xmlns="http://mulan.sourceforge.net/labels">
          <label name="outer"><label name="inner"></label></label>
          <label name="last"/>
        </labels>"""
        assert parse_label_header(xml) == ("outer", "inner", "last")

    def test_no_labels_rejected(self):
        with pytest.raises(MulanFormatError, match="no labels"):
            parse_label_header("<labels></labels>")

    def test_bad_xml_rejected(self):
        with pytest.raises(MulanFormatError, match="bad XML"):
            parse_label_header("<labels>")


class TestWrite:
    def test_round_trip_toy(self, toy6):
        d = parse_mulan(*write_mulan(toy6))
        assert d == toy6

    def test_empty_labelset_row(self):
        d = make_dataset([AttributeSpec("a")], ("A", "B"), [((1.0,), [])])
        arff_text, xml_text = write_mulan(d)
        assert arff_text.splitlines()[-1] == "1.0,0,0"
        back = parse_mulan(arff_text, xml_text)
        assert not back.instances[0].labels

    def test_missing_value_round_trip(self):
        d = make_dataset([AttributeSpec("a")], ("A",), [((None,), [0])])
        arff_text, _ = write_mulan(d)
        assert "?,1" in arff_text
        assert parse_mulan(*write_mulan(d)) == d

    def test_names_needing_quotes(self):
        d = make_dataset(
            [AttributeSpec("odd name", values=("v 1", "v2"))],
            ("A",),
            [((0,), [0])],
            name="data set",
        )
        assert parse_mulan(*write_mulan(d)) == d


@settings(max_examples=120, deadline=None)
@given(datasets(quotable_names=True))
def test_parse_write_identity(d):
    assert parse_mulan(*write_mulan(d)) == d


@settings(max_examples=60, deadline=None)
@given(datasets())
def test_parse_preserves_order(d):
    back = parse_mulan(*write_mulan(d))
    assert [a.name for a in back.attributes] == [a.name for a in d.attributes]
    assert back.instances == d.instances
