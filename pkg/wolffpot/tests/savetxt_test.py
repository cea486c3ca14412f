import math

import pytest

from wolffpot import exceptions, loaders
from wolffpot.plugins import examples
from wolffpot.solver import picard_solve, uniqueness_probe
from wolffpot.structures import IterationHistory, ProbeTable, StructuredDataFrame


def _history():
    problem = examples.example_scalar_problem()
    return picard_solve(problem.sigma, problem.mu, problem.prm, "kernel", kernel=problem.kernel).history()


def test_savetxt_and_load(tmp_path):
    history = _history()
    path = tmp_path / "iterations.csv"
    history.savetxt(path)
    loaded = loaders.load_file(path)
    assert isinstance(loaded, IterationHistory)
    assert loaded.metadata["mode"] == "kernel"
    assert loaded.metadata["converged"] is True
    assert len(loaded) == len(history)
    assert loaded["norm"].tolist() == pytest.approx(history["norm"].tolist(), rel=1e-15)
    assert math.isnan(loaded["sup_change"].iloc[0])


def test_savetxt_refuses_to_overwrite(tmp_path):
    path = tmp_path / "iterations.df"
    history = _history()
    history.savetxt(path)
    with pytest.raises(FileExistsError):
        history.savetxt(path)
    history.savetxt(path, overwrite=True)


def test_serialize_is_deterministic():
    assert _history().serialize() == _history().serialize()


def test_probe_table_round_trip(tmp_path):
    problem = examples.example_scalar_problem()
    table = uniqueness_probe(problem.sigma, problem.mu, problem.prm, "kernel", n_seeds=2,
                             kernel=problem.kernel).table()
    assert isinstance(table, ProbeTable)
    path = tmp_path / "probe.csv"
    table.savetxt(path)
    loaded = loaders.load_file(path)
    assert list(loaded["seed"]) == list(table["seed"])


def test_required_columns():
    with pytest.raises(exceptions.StructureException):
        IterationHistory.from_rows([{"iteration": 0, "norm": 1.0}], name="broken")
    frame = StructuredDataFrame.from_rows([{"a": 1}], name="plain")
    assert frame.metadata["name"] == "plain"


def test_foreign_csv_is_not_a_report(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(exceptions.LoaderNotFound):
        loaders.load_file(path)


def test_header_of_another_program_is_rejected(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text('# {"file-type": "something else", "class": "IterationHistory"}\na,b\n1,2\n')
    with pytest.raises(exceptions.LoaderNotFound):
        loaders.load_file(path)


def test_reregistering_a_loader_warns():
    loader = loaders.loaders[".df"][0]
    with pytest.warns(UserWarning):
        loaders.register_loaders(loader)
    assert loaders.loaders[".df"].count(loader) == 1
