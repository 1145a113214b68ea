import pytest

from nilorbit import tools


class DummyMCP:
    def __init__(self):
        self.registered = []

    def tool(self):
        def deco(f):
            self.registered.append(f.__name__)
            return f

        return deco


@pytest.fixture(autouse=True)
def _reset_config(monkeypatch):
    monkeypatch.delenv("NILORBIT_PRIME_BOUND", raising=False)
    monkeypatch.delenv("NILORBIT_WORKERS", raising=False)
    tools.configure({})


def test_register_all():
    mcp = DummyMCP()
    tools.register(mcp)
    assert mcp.registered == [name for name, _ in tools.TOOLS]


def test_register_enabled_subset():
    mcp = DummyMCP()
    tools.register(mcp, {"classify", "mod_p"})
    assert sorted(mcp.registered) == ["classify", "mod_p"]


def test_classify_tool():
    data = tools.classify("-2,4", 1, primes_up_to=100)
    assert data["schema"] == "nilorbit/1"
    assert data["verdict"] == "not-weakly-locally-nilpotent"
    assert data["witness"] == 5


def test_classify_tool_with_exclude():
    data = tools.classify("-1,-2", 1, exclude="2", primes_up_to=100)
    assert data["verdict"] == "weakly-locally-nilpotent-outside-A"
    assert data["provenance"] == "Thm5.1(4)"


def test_mod_p_tool():
    assert tools.mod_p("-2,4", 0, 3)["m_p"] == 3


def test_orbit_tool():
    data = tools.orbit("-2,0,1", 0)
    assert data["outcome"] == "enters-cycle"
    data = tools.orbit("-2,4", 1, mod=5)
    assert data["trajectory"] == [2, 1]


def test_scan_tool_uses_configured_bound():
    tools.configure({"prime_bound": 30})
    data = tools.scan("1,1", 1)
    assert data["bound"] == 30
    assert data["status"] == "all-found-up-to-bound"


def test_explore_tool():
    assert tools.explore("0,0,1", 3, primes_up_to=50)["nilpotent"] == [0]


def test_verify_suite_tool():
    data = tools.verify_suite("cor4.3", primes_up_to=100, coeff_min=-2, coeff_max=2)
    assert data["passed"] is True


def test_list_suites():
    assert "thm4.1" in tools.list_suites()["suites"]


@pytest.mark.parametrize(
    "call,code",
    [
        (lambda: tools.mod_p("-2,4", 0, 4), "invalid-modulus"),
        (lambda: tools.classify("1,x", 1), "parse"),
        (lambda: tools.orbit("7", 0), "not-a-dynamical-map"),
        (lambda: tools.scan("1,1", 1, exclude="4"), "invalid-argument"),
        (lambda: tools.scan("1,1", 1, exclude="two"), "invalid-argument"),
        (lambda: tools.verify_suite("nope"), "unknown-suite"),
        (lambda: tools.explore("1,1", 0), "invalid-argument"),
    ],
)
def test_tool_errors(call, code):
    data = call()
    assert data["code"] == code
    assert data["error"]
