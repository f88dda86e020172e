from pathlib import Path

import pytest

from krh.goldens import dump, golden_cases, golden_path, golden_payload

ROOT = Path(__file__).resolve().parent.parent / "goldens"


@pytest.mark.parametrize("alg_name, tangle_name", golden_cases())
def test_golden(alg_name, tangle_name, regen_goldens):
    path = golden_path(ROOT, alg_name, tangle_name)
    fresh = dump(golden_payload(alg_name, tangle_name))
    if regen_goldens:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(fresh)
    assert path.read_text() == fresh
