import io
import json

import pytest

from streamcc.cli import main


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def triangle_file(tmp_path):
    return write(tmp_path / "triangle.txt", "n 3\n1 2\n1 3\n2 3\n")


@pytest.fixture
def path3_file(tmp_path):
    return write(tmp_path / "path3.txt", "n 3\n1 2\n2 3\n")


class TestGen:
    def test_clique_line_count(self, capsys):
        assert main(["gen", "--kind", "clique", "--n", "4"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "n 4"
        assert len(lines) == 7

    def test_empty_header_only(self, capsys):
        assert main(["gen", "--kind", "empty", "--n", "3"]) == 0
        assert capsys.readouterr().out.strip() == "n 3"

    def test_planted_two_triangles(self, capsys):
        assert main(["gen", "--kind", "planted", "--sizes", "3,3", "--flip", "0"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "n 6"
        assert len(lines) == 7

    def test_bad_spec_exits_2(self, capsys):
        assert main(["gen", "--kind", "random", "--n", "3", "--p", "1.5"]) == 2


class TestCluster:
    def test_triangle_single_cluster(self, triangle_file, capsys):
        assert main(["cluster", triangle_file, "--k", "2", "--seed", "7"]) == 0
        captured = capsys.readouterr()
        rows = [line.split("\t") for line in captured.out.strip().splitlines()]
        assert len(rows) == 3
        assert len({r[1] for r in rows}) == 1
        summary = json.loads(captured.err)
        assert summary["num_clusters"] == 1
        assert summary["num_singletons"] == 0

    def test_byte_identical_reruns(self, triangle_file, capsys):
        main(["cluster", triangle_file, "--k", "2", "--seed", "7"])
        first = capsys.readouterr().out
        main(["cluster", triangle_file, "--k", "2", "--seed", "7"])
        assert capsys.readouterr().out == first

    def test_k_below_two_exits_2(self, path3_file):
        assert main(["cluster", path3_file, "--k", "1"]) == 2

    def test_malformed_line_exits_2(self, tmp_path, capsys):
        bad = write(tmp_path / "bad.txt", "n 3\n1 2\nnot an edge\n")
        assert main(["cluster", bad, "--k", "2"]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_stdin_requires_n(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO("1 2\n2 3\n"))
        assert main(["cluster", "-", "--k", "2"]) == 2

    def test_stdin_single_pass(self, monkeypatch, capsys):
        # StringIO without seeking back: the command must stream it once.
        monkeypatch.setattr("sys.stdin", io.StringIO("1 2\n2 3\n"))
        assert main(["cluster", "-", "--k", "2", "--n", "3", "--seed", "1"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 3

    def test_stdin_header_supplies_n(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO("n 3\n1 2\n2 3\n"))
        assert main(["cluster", "-", "--k", "2", "--seed", "1"]) == 0
        assert len(capsys.readouterr().out.strip().splitlines()) == 3

    def test_env_seed_fallback(self, triangle_file, capsys, monkeypatch):
        monkeypatch.setenv("STREAMCC_SEED", "7")
        main(["cluster", triangle_file, "--k", "2"])
        with_env = capsys.readouterr().out
        monkeypatch.delenv("STREAMCC_SEED")
        main(["cluster", triangle_file, "--k", "2", "--seed", "7"])
        assert capsys.readouterr().out == with_env

    def test_order_check_passes(self, path3_file):
        assert main(["cluster", path3_file, "--k", "2", "--order-check"]) == 0

    def test_negative_edges_ignored(self, tmp_path, capsys):
        mixed = write(tmp_path / "mixed.txt", "n 3\n1 2 +\n1 3 -\n2 3 -\n")
        assert main(["cluster", mixed, "--k", "2", "--seed", "0"]) == 0
        summary = json.loads(capsys.readouterr().err)
        assert summary["ignored_negative"] == 2

    def test_outputs_to_files(self, triangle_file, tmp_path, capsys):
        out = tmp_path / "c.tsv"
        summ = tmp_path / "s.json"
        assert main([
            "cluster", triangle_file, "--k", "2", "--seed", "3",
            "--out", str(out), "--summary", str(summ), "--evaluate",
        ]) == 0
        assert len(out.read_text().strip().splitlines()) == 3
        summary = json.loads(summ.read_text())
        assert summary["cost"]["total"] == 0


class TestEval:
    def test_round_trip_cost_zero(self, triangle_file, tmp_path, capsys):
        out = tmp_path / "c.tsv"
        main(["cluster", triangle_file, "--k", "2", "--seed", "1", "--out", str(out)])
        capsys.readouterr()
        assert main(["eval", "--clustering", str(out), "--edges", triangle_file]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report == {"cut_positive": 0, "joined_negative": 0, "total": 0}

    def test_one_cluster_over_empty_graph(self, tmp_path, capsys):
        edges = write(tmp_path / "empty.txt", "n 3\n")
        clustering = write(
            tmp_path / "one.tsv", "1\t1\tpivot\n2\t1\tmember\n3\t1\tmember\n"
        )
        assert main(["eval", "--clustering", clustering, "--edges", edges]) == 0
        assert json.loads(capsys.readouterr().out)["total"] == 3

    def test_split_path_costs_one(self, path3_file, tmp_path, capsys):
        clustering = write(
            tmp_path / "split.tsv", "1\t1\tpivot\n2\t1\tmember\n3\t3\tpivot\n"
        )
        assert main(["eval", "--clustering", clustering, "--edges", path3_file]) == 0
        assert json.loads(capsys.readouterr().out)["total"] == 1

    def test_vertex_set_mismatch_exits_2(self, triangle_file, tmp_path):
        clustering = write(tmp_path / "short.tsv", "1\t1\tpivot\n2\t1\tmember\n")
        assert main(["eval", "--clustering", clustering, "--edges", triangle_file]) == 2


class TestCompare:
    def test_generated_instance_all_seeds_pass(self, tmp_path, capsys):
        edges = tmp_path / "g.txt"
        main(["gen", "--kind", "planted", "--sizes", "4,4", "--flip", "0.2",
              "--seed", "5", "--out", str(edges)])
        seeds = [str(s) for s in range(10)]
        assert main(["compare", str(edges), "--k", "3", "--seeds", *seeds]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 10

    def test_k_geq_n_adds_classic_check(self, path3_file, capsys):
        assert main(["compare", path3_file, "--k", "5", "--seeds", "1", "2"]) == 0
        assert capsys.readouterr().out.count("PASS") == 2

    def test_empty_graph_passes(self, tmp_path, capsys):
        edges = write(tmp_path / "empty.txt", "n 4\n")
        assert main(["compare", str(edges), "--k", "2", "--seeds", "3"]) == 0


class TestBench:
    def test_table_and_figures(self, tmp_path, capsys):
        plot_dir = tmp_path / "plots"
        summ = tmp_path / "bench.json"
        assert main([
            "bench", "--kind", "planted", "--sizes", "6,6", "--flip", "0.1",
            "--seed", "2", "--k-list", "2,4", "--trials", "5",
            "--summary", str(summ), "--plot-dir", str(plot_dir),
        ]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert out[0].startswith("k\t")
        assert len(out) == 3
        data = json.loads(summ.read_text())
        for row in data["rows"]:
            assert row["peak_entries"] <= row["kn_bound"]
        for name in ("cost_vs_k.png", "time_vs_k.png", "memory_vs_k.png"):
            assert (plot_dir / name).exists()

    def test_requires_some_input(self):
        assert main(["bench", "--k-list", "2"]) == 2
