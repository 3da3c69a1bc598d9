import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gabortf.errors import InputError
from gabortf.fileio import grid_to_pgm, read_grid, read_pgm, read_signal, write_grid, write_grid_image, write_signal

finite = st.floats(allow_nan=False, allow_infinity=False)


def test_read_signal_format(tmp_path):
    path = tmp_path / "s.sig"
    path.write_text("# signal L=2\n1.0,0.0\n2.0,0.0\n")
    np.testing.assert_array_equal(read_signal(path), [1 + 0j, 2 + 0j])


def test_signal_round_trip_bit_exact(tmp_path, rng):
    s = rng.standard_normal(1000) * 10.0 ** rng.integers(-300, 300, 1000) + 1j * rng.standard_normal(1000)
    s[0] = complex(-0.0, 5e-324)
    write_signal(tmp_path / "s.sig", s)
    back = read_signal(tmp_path / "s.sig")
    assert back.view(np.uint64).tolist() == s.view(np.uint64).tolist()


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=20))
def test_signal_round_trip_property(tmp_path_factory, pairs):
    path = tmp_path_factory.mktemp("sig") / "s.sig"
    s = np.array([complex(re, im) for re, im in pairs])
    write_signal(path, s)
    assert read_signal(path).view(np.uint64).tolist() == s.view(np.uint64).tolist()


def test_short_file_names_line(tmp_path):
    path = tmp_path / "s.sig"
    path.write_text("# signal L=3\n1,0\n2,0\n")
    with pytest.raises(InputError, match=r":3:"):
        read_signal(path)


def test_malformed_line(tmp_path):
    path = tmp_path / "s.sig"
    path.write_text("1,0\n2;0\n")
    with pytest.raises(InputError, match=r":2:"):
        read_signal(path)
    path.write_text("1,0\nx,0\n")
    with pytest.raises(InputError, match=r":2:"):
        read_signal(path)


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        read_signal(tmp_path / "nope.sig")


def test_headerless_signal(tmp_path):
    path = tmp_path / "s.sig"
    path.write_text("1,2\n\n3,-4\n")
    np.testing.assert_array_equal(read_signal(path), [1 + 2j, 3 - 4j])


def test_grid_round_trip(tmp_path, rng):
    c = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
    write_grid(tmp_path / "c.tfg", c)
    text = (tmp_path / "c.tfg").read_text().splitlines()
    assert text[0] == "# grid M=3 N=5" and len(text) == 4
    assert text[1].count(",") == 4 and text[1].count(":") == 5
    assert np.array_equal(read_grid(tmp_path / "c.tfg"), c)


@pytest.mark.parametrize(
    "body,line",
    [
        ("# grid M=2 N=2\n1:0,2:0\n3:0\n", 3),
        ("# grid M=2 N=2\n1:0,2:0\n", 2),
        ("1:0,2:0\n", 1),
        ("# grid M=1 N=2\n1:0,2,0\n", 2),
    ],
)
def test_grid_errors(tmp_path, body, line):
    path = tmp_path / "c.tfg"
    path.write_text(body)
    with pytest.raises(InputError, match=f":{line}:"):
        read_grid(path)


def test_pgm_identity(tmp_path):
    write_grid_image(tmp_path / "i.pgm", np.array([[1, 0], [0, 1]]), 1.0)
    text = (tmp_path / "i.pgm").read_text()
    assert text.split()[:4] == ["P2", "2", "2", "255"]
    np.testing.assert_array_equal(read_pgm(tmp_path / "i.pgm"), [[255, 0], [0, 255]])


def test_pgm_zero_grid():
    tokens = grid_to_pgm(np.zeros((3, 4))).split()
    assert tokens[:4] == ["P2", "4", "3", "255"]
    assert all(t == "0" for t in tokens[4:]) and len(tokens) == 16


def test_pgm_gamma():
    tokens = grid_to_pgm(np.array([[0.25, 1.0]]), 0.5).split()
    assert tokens[4:] == ["128", "255"]


def test_pgm_unwritable(tmp_path):
    with pytest.raises(OSError):
        write_grid_image(tmp_path / "missing" / "i.pgm", np.ones((2, 2)))
