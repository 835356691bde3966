"""
Tests for search checkpoints, incremental corpus scans and the table reports
"""
import os

from checkpoint import CheckpointManager
from corpus_scan import detect_changes, incremental_corpus_scan, record_scan
from reports import (
    generate_inequivalent_csv, generate_inequivalent_report, reference_mismatches, save_csv_report
)


def test_checkpoint_resume(tmp_path):
    path = str(tmp_path / "cp.json")
    first = CheckpointManager(path, job="inequivalent k=3 qmin=3 qmax=200")
    assert not first.should_resume()
    first.mark_item_complete("67", 1)

    again = CheckpointManager(path, job="inequivalent k=3 qmin=3 qmax=200")
    assert again.should_resume()
    assert again.is_item_complete("67")
    assert again.get_result("67") == 1
    assert again.get_progress_summary(total=10) == "✓ Items completed: 1/10"

    again.mark_all_complete()
    assert not CheckpointManager(path, job="inequivalent k=3 qmin=3 qmax=200").should_resume()


def test_checkpoint_of_another_job_is_ignored(tmp_path):
    path = str(tmp_path / "cp.json")
    CheckpointManager(path, job="sts9 full").mark_item_complete("0", [10, 0])
    other = CheckpointManager(path, job="inequivalent k=5 qmin=3 qmax=500")
    assert other.get_completed_items() == []


def test_checkpoint_invalidate_and_clear(tmp_path):
    path = str(tmp_path / "cp.json")
    checkpoint = CheckpointManager(path, job="j")
    checkpoint.mark_item_complete("a", 1)
    checkpoint.mark_item_complete("b", 2)
    checkpoint.invalidate_item("a")
    assert checkpoint.get_completed_items() == ["b"]
    checkpoint.clear()
    assert not os.path.exists(path)
    assert checkpoint.get_progress_summary() == "🔵 Not started"


def test_detect_changes():
    new, changed, deleted = detect_changes({"a": "1", "b": "2", "c": "3"}, {"b": "2", "c": "9", "d": "4"})
    assert (new, changed, deleted) == ({"a"}, {"c"}, {"d"})


def test_incremental_scan_retries_failures(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    good, bad = corpus / "good.cert", corpus / "bad.cert"
    good.write_text("x\n")
    bad.write_text("y\n")
    (corpus / "notes.txt").write_text("ignored\n")
    cache = str(tmp_path / "scan.json")

    files, to_verify = incremental_corpus_scan(str(corpus), cache)
    assert files == [str(bad), str(good)]
    assert to_verify == {str(bad), str(good)}

    record_scan(str(corpus), cache, {str(good)})
    _, to_verify = incremental_corpus_scan(str(corpus), cache)
    assert to_verify == {str(bad)}


def test_inequivalent_reports(tmp_path):
    rows = [(67, 1), (79, 0), (151, 3), (499, 4)]
    text = generate_inequivalent_report(rows, 3)
    assert text.startswith("=" * 60)
    assert "❌" in text and "✓" in text
    assert reference_mismatches(rows, 3) == [151]
    assert reference_mismatches(rows, 5) is None

    csv_rows = generate_inequivalent_csv(rows, 3)
    assert csv_rows[0] == ['k', 'q', 'count', 'reference']
    assert csv_rows[-1] == ['3', '499', '4', '']
    target = tmp_path / "out" / "table.csv"
    save_csv_report(csv_rows, str(target))
    assert target.read_text().splitlines()[1] == "3,67,1,1"


def test_edited_certificate_and_broken_cache(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    cert = corpus / "a.cert"
    cert.write_text("x\n")
    cache = tmp_path / "scan.json"
    record_scan(str(corpus), str(cache), {str(cert)})
    assert incremental_corpus_scan(str(corpus), str(cache))[1] == set()

    cert.write_text("longer\n")
    assert incremental_corpus_scan(str(corpus), str(cache))[1] == {str(cert)}

    cache.write_text("{not json")
    assert incremental_corpus_scan(str(corpus), str(cache))[1] == {str(cert)}
