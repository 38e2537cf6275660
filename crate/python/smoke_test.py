#!/usr/bin/env python3
"""Smoke test for the resenv_py bindings.

Locates the compiled extension in target/ (building it if missing), stages
it under an importable name, and exercises the main types and scenario
entry points. Exits nonzero on any failure.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def stage_extension() -> None:
    candidates = [
        REPO / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libresenv_py.so", "libresenv_py.dylib", "resenv_py.dll")
    ]
    lib = next((c for c in candidates if c.exists()), None)
    if lib is None:
        subprocess.run(["cargo", "build", "-p", "resenv-py"], cwd=REPO, check=True)
        lib = next(c for c in candidates if c.exists())
    stage = Path(tempfile.mkdtemp(prefix="resenv_py."))
    shutil.copy2(lib, stage / "resenv_py.so")
    sys.path.insert(0, str(stage))


stage_extension()
import resenv_py as rp  # noqa: E402

failures = 0


def check(name: str, cond: bool) -> None:
    global failures
    print(f"{'PASS' if cond else 'FAIL'} {name}")
    if not cond:
        failures += 1


def raises(fn) -> bool:
    try:
        fn()
        return False
    except ValueError:
        return True


# --- scalars ---------------------------------------------------------------
F = rp.Field(2, ["t1", "t2"])
check("field basics", F.p == 2 and F.vars == ["t1", "t2"] and not F.is_perfect)
a = F.parse("(t1 + t2)/t1")
b = F.var("t2")
check("exact inverse", (a * a.inverse()).is_one())
check("division agrees with inverse", a / b == a * b.inverse())
check("freshman dream", (a + b) ** 2 == a**2 + b**2)
check("frobenius then root", a.frobenius(2).pth_root(2) == a)
check("imperfect field has rootless vars", raises(lambda: b.pth_root(1)))
check("scalar printing round-trips", F.parse(str(a)) == a)

# --- algebras and elements -------------------------------------------------
names = rp.fixture_names()
check("fixture catalogue", "heisenberg_p2" in names and "mixed_torus" in names)
alg = rp.Algebra.fixture("heisenberg_p2")
check("algebra shape", alg.p == 2 and alg.dim == 3 and alg.env_dim == 8)
check("validation passes", alg.validate()["pass"])

x = alg.basis_element("x")
y = alg.basis_element("y")
check("bracket lands on z", str(x.bracket(y)) == "z")
check("generators are 2-nilpotent", x.p_nilpotency() == 1 and y.p_nilpotency() == 1)

u = alg.env("1 + x*y")
check("unit has an inverse", u.is_invertible() and (u * u.inverse()).is_one())
check("square of a generator vanishes", (alg.env("x") ** 2).is_zero())
check("counit is the augmentation", alg.env("1 + x").counit().is_one())
v = alg.env("x + y*z")
check("antipode reverses products", (u * v).antipode() == v.antipode() * u.antipode())
check("envelope printing round-trips", alg.env(str(v)) == v)

mixed = rp.Algebra.fixture("mixed_torus")
check("p-radical basis", mixed.p_radical() == ["w"])
rad = alg.radical()
check(
    "radical certificate",
    rad["status"] == "pass" and rad["checks"][0]["witness"]["dimension"] == 7,
)

spec_text = alg.to_json()
check("structure file round-trips", rp.Algebra.from_json(spec_text).dim == 3)

# --- scenarios -------------------------------------------------------------
rep = rp.verify_perfect_field(1, 1, trials=4, seed=3)
check("perfect-field scenario", rep["status"] == "pass" and len(rep["checks"]) == 7)
check("torus-chain scenario", rp.verify_torus_chain(2, 2)["status"] == "pass")
check(
    "locally-finite scenario",
    rp.verify_locally_finite(mixed, gens=["w"])["status"] == "pass",
)
check(
    "free-module scenario",
    rp.verify_free_module(alg, ["x"], ["x", "y"])["status"] == "pass",
)
check(
    "semiperfect-abelian scenario",
    rp.verify_semiperfect_abelian(mixed)["status"] == "pass",
)

# --- error mapping ---------------------------------------------------------
check("unknown fixture raises", raises(lambda: rp.Algebra.fixture("nope")))
check("bad scenario input raises", raises(lambda: rp.verify_perfect_field(0, 1)))
check("division by zero raises", raises(lambda: a / F.zero()))
check("toral generator refused", raises(lambda: rp.verify_locally_finite(mixed, gens=["x"])))

print(f"\n{('OK' if failures == 0 else 'FAILED')}: {29 - failures}/29 checks passed")
sys.exit(0 if failures else 1)
