"""Integrity of the bundled sample corpus and system outputs."""

import io

import pytest

from greeksum_eval.corpus import dump_corpus, load_corpus
from greeksum_eval.samples import (
    SAMPLE_COUNT,
    SYSTEMS,
    corpus_path,
    load_sample,
    load_sample_corpus,
    load_sample_system,
    system_output_path,
)

SAMPLE_2_OPENING = (
    "Για τέταρτη φορά θα τραγουδήσει σε σόου της Eurovision η Έλενα Παπαρίζου."
)


def test_nine_samples():
    assert SAMPLE_COUNT == 9
    assert len(load_sample_corpus()) == 9


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        load_sample(0)
    with pytest.raises(ValueError):
        load_sample(10)


def test_every_sample_has_all_system_rows():
    for number in range(1, 10):
        sample = load_sample(number)
        assert sample.article.strip()
        assert sample.summary.strip()
        assert set(sample.system_summaries) == set(SYSTEMS)
        for text in sample.system_summaries.values():
            assert text.strip()


def test_sample_2_article_opening_is_verbatim():
    assert load_sample(2).article.startswith(SAMPLE_2_OPENING)


def test_all_records_are_test_split():
    assert all(record.split == "test" for record in load_sample_corpus())


def test_corpus_file_roundtrips_byte_losslessly():
    corpus = load_sample_corpus()
    buffer = io.StringIO()
    dump_corpus(corpus, buffer)
    assert buffer.getvalue() == corpus_path().read_text(encoding="utf-8")
    buffer.seek(0)
    assert load_corpus(buffer) == corpus


def test_system_files_exist_and_load():
    for system in SYSTEMS:
        output = load_sample_system(system)
        assert len(output.summaries) == 9
        assert system_output_path(system).is_file()


def test_unknown_system_rejected():
    with pytest.raises(ValueError):
        system_output_path("nonexistent")


def test_sample_1_textrank_row_opening():
    row = load_sample(1).system_summaries["textrank"]
    assert row.startswith("Αυτές οι διαδικασίες, που εισάγονται")


def test_textrank_reproduces_sample_1_selection():
    from greeksum_eval.extractive import textrank_summarize

    sample = load_sample(1)
    summary, _ = textrank_summarize(sample.article, 1)
    assert summary == sample.system_summaries["textrank"]


def test_lead_baseline_on_sample_corpus():
    from greeksum_eval.evaluator import run_baseline

    output = run_baseline(load_sample_corpus(), "lead", n=1)
    assert output.summaries["sample-02"] == SAMPLE_2_OPENING
