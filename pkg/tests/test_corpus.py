"""Corpus loading, validation diagnostics, serialization and statistics."""

import io
import json
import random

import pytest

from greeksum_eval.corpus import (
    Corpus,
    CorpusError,
    CorpusFormat,
    DocumentRecord,
    compute_stats,
    dump_corpus,
    dump_system_output,
    load_corpus,
    load_system_outputs,
    split_proportion_warnings,
)


def jsonl(*objs):
    return io.StringIO("".join(json.dumps(o, ensure_ascii=False) + "\n" for o in objs))


RECORD_A = {"id": "a", "article": "Κείμενο άρθρου.", "summary": "Περίληψη.", "split": "test"}
RECORD_B = {"id": "b", "article": "Άλλο κείμενο.", "summary": "Άλλη περίληψη.", "split": "test"}


class TestLoadCorpus:
    def test_two_records(self):
        corpus = load_corpus(jsonl(RECORD_A, RECORD_B))
        assert len(corpus) == 2
        assert len(corpus.index) == 2
        assert corpus.get("a").summary == "Περίληψη."

    def test_empty_summary_diagnostic_names_line_and_field(self):
        bad = dict(RECORD_B, summary="   ")
        with pytest.raises(CorpusError) as err:
            load_corpus(jsonl(RECORD_A, bad))
        assert "line 2" in str(err.value)
        assert "summary" in str(err.value)

    def test_duplicate_id_cites_both_lines(self):
        with pytest.raises(CorpusError) as err:
            load_corpus(jsonl(RECORD_A, dict(RECORD_A, article="Αλλιώς.")))
        message = str(err.value)
        assert "line 2" in message and "line 1" in message and "'a'" in message

    def test_unknown_split_label(self):
        with pytest.raises(CorpusError, match="split"):
            load_corpus(jsonl(dict(RECORD_A, split="dev")))

    def test_invalid_json_line(self):
        stream = io.StringIO('{"id": "a"\n')
        with pytest.raises(CorpusError, match="line 1"):
            load_corpus(stream)

    def test_permissive_skips_with_warning(self, caplog):
        bad = dict(RECORD_B, summary="")
        with caplog.at_level("WARNING"):
            corpus = load_corpus(jsonl(RECORD_A, bad), permissive=True)
        assert len(corpus) == 1
        assert any("line 2" in r.message for r in caplog.records)

    def test_permissive_still_rejects_duplicates(self):
        with pytest.raises(CorpusError, match="duplicate"):
            load_corpus(jsonl(RECORD_A, RECORD_A), permissive=True)

    def test_csv_with_header_mapping(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text(
            "doc_id,body,abstract,part\n"
            "a,Κείμενο άρθρου.,Περίληψη.,test\n",
            encoding="utf-8",
        )
        fmt = CorpusFormat(
            kind="csv",
            fields={"id": "doc_id", "article": "body", "summary": "abstract", "split": "part"},
        )
        corpus = load_corpus(path, fmt=fmt)
        assert corpus.get("a").article == "Κείμενο άρθρου."

    def test_csv_inferred_from_extension(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text(
            "id,article,summary,split\na,Κείμενο.,Περίληψη.,test\n", encoding="utf-8"
        )
        assert len(load_corpus(path)) == 1

    def test_csv_diagnostic_counts_header_line(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text(
            "id,article,summary,split\na,Κείμενο.,,test\n", encoding="utf-8"
        )
        with pytest.raises(CorpusError, match="line 2"):
            load_corpus(path)

    def test_roundtrip_is_lossless(self, tmp_path):
        original = load_corpus(
            jsonl(
                dict(RECORD_A, title="Τίτλος", topic="πολιτική"),
                dict(RECORD_B, split="train"),
            )
        )
        path = tmp_path / "again.jsonl"
        dump_corpus(original, path)
        assert load_corpus(path) == original


class TestSystemOutputs:
    def test_single_entry(self):
        output = load_system_outputs(jsonl({"id": "a", "summary": "x"}), "sys")
        assert output.system_name == "sys"
        assert output.summaries == {"a": "x"}

    def test_duplicate_id(self):
        with pytest.raises(CorpusError, match="duplicate"):
            load_system_outputs(
                jsonl({"id": "a", "summary": "x"}, {"id": "a", "summary": "y"}), "sys"
            )

    def test_empty_stream(self):
        assert load_system_outputs(io.StringIO(""), "sys").summaries == {}

    def test_empty_summaries_are_retained(self):
        output = load_system_outputs(jsonl({"id": "a", "summary": ""}), "sys")
        assert output.summaries["a"] == ""

    def test_missing_summary_field(self):
        with pytest.raises(CorpusError, match="summary"):
            load_system_outputs(jsonl({"id": "a"}), "sys")

    def test_roundtrip(self, tmp_path):
        output = load_system_outputs(jsonl({"id": "a", "summary": "Ωμέγα."}), "sys")
        path = tmp_path / "out.jsonl"
        dump_system_output(output, path)
        assert load_system_outputs(path, "sys") == output


class TestComputeStats:
    def test_mean_summary_words(self):
        corpus = load_corpus(
            jsonl(
                dict(RECORD_A, summary="ένα δύο τρία τέσσερα"),
                dict(RECORD_B, summary="ένα δύο τρία τέσσερα πέντε έξι"),
            )
        )
        stats = compute_stats(corpus)
        assert stats.splits["test"].mean_summary_words == pytest.approx(5.0)
        assert stats.total_records == 2

    def test_single_sentence_summaries(self):
        corpus = load_corpus(jsonl(RECORD_A, RECORD_B))
        assert compute_stats(corpus).splits["test"].mean_summary_sentences == 1.0

    def test_titles_missing_excluded_from_mean(self):
        corpus = load_corpus(
            jsonl(dict(RECORD_A, title="δύο λέξεις"), RECORD_B)
        )
        assert compute_stats(corpus).splits["test"].mean_title_words == pytest.approx(2.0)

    def test_no_titles_at_all(self):
        corpus = load_corpus(jsonl(RECORD_A))
        assert compute_stats(corpus).splits["test"].mean_title_words is None

    def test_empty_corpus_rejected(self):
        with pytest.raises(CorpusError):
            compute_stats(Corpus([]))

    def test_permutation_invariant(self):
        objs = [
            dict(RECORD_A, id=f"r{i}", summary=" ".join(["λέξη"] * (i + 1)))
            for i in range(6)
        ]
        rng = random.Random(1)
        shuffled = objs[:]
        rng.shuffle(shuffled)
        assert compute_stats(load_corpus(jsonl(*objs))) == compute_stats(
            load_corpus(jsonl(*shuffled))
        )

    def test_split_counts_sum_to_total(self):
        objs = [
            dict(RECORD_A, id="r1", split="train"),
            dict(RECORD_A, id="r2", split="validation"),
            dict(RECORD_A, id="r3", split="test"),
            dict(RECORD_A, id="r4", split="test"),
        ]
        corpus = load_corpus(jsonl(*objs))
        assert sum(corpus.split_counts().values()) == len(corpus)


class TestRecordValidation:
    def test_direct_construction_validates(self):
        with pytest.raises(ValueError):
            DocumentRecord(id="", article="α", summary="β", split="test")
        with pytest.raises(ValueError):
            DocumentRecord(id="a", article=" ", summary="β", split="test")
        with pytest.raises(ValueError):
            DocumentRecord(id="a", article="α", summary="β", split="dev")


def test_split_proportion_warnings_fire_for_test_only_corpus():
    corpus = load_corpus(jsonl(RECORD_A, RECORD_B))
    warnings = split_proportion_warnings(corpus)
    assert warnings  # 100% test split is far from the usual layout
