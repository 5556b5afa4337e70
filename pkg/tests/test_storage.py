from engine.classify import scan_total
from models import storage

from conftest import fn


def test_write_text_creates_directory(tmp_path):
    path = storage.write_text(str(tmp_path / "a" / "b"), "x.txt", "hello\n")
    assert storage.read_text(path) == "hello\n"


def test_stamp_is_appended(tmp_path):
    path = storage.write_text(str(tmp_path), "x.txt", "body\n", stamp=True)
    lines = storage.read_text(path).splitlines()
    assert lines[0] == "body"
    assert lines[1].startswith("# generated ") and lines[1].endswith("Z")


def test_function_file_is_normalised(tmp_path):
    path = storage.save_function(str(tmp_path), "g", fn("11 1\n# c\n00 0\n"))
    assert storage.read_text(path) == "n=2\n00 0\n11 1\n"
    assert storage.load_function(path) == fn("00 0\n11 1")


def test_summary_lists_one_query_representatives():
    text = storage.format_summary(scan_total(2))
    lines = text.splitlines()
    assert lines[:3] == ["n=2", "mode=total", "examined=16"]
    assert "characterization.parity2=2" in lines
    reps = lines[lines.index("representatives:") + 1:]
    assert len(reps) == 3
    assert all(" one-query degree=" in line for line in reps)


def test_search_results_files(tmp_path):
    paths = storage.save_search_results(scan_total(1), str(tmp_path))
    names = sorted(p.split("/")[-1] for p in paths)
    assert names == ["0.cert", "0.fn", "1.cert", "1.fn", "summary.txt"]
