"""
Shared fixtures: reference media and assembled systems.

Assembled systems are session scoped; the kernel memo cache makes later
assemblies for the same medium cheap.
"""
from pathlib import Path

import pytest

from stripcrack.models.material import MaterialParams
from stripcrack.models.quadrature import QuadratureSpec
from stripcrack.services.assembly import GalerkinAssembler
from stripcrack.services.kernel import KernelEvaluator
from stripcrack.services.linsolve import solve_system
from stripcrack.services.wave import derive_wave_params

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(scope="session")
def config_dir():
    return CONFIG_DIR


@pytest.fixture(scope="session")
def medium_a():
    """First reference viscoelastic medium."""
    return MaterialParams(G=8.0e10, G0=6.5e10, rho=2700.0, k=3.0, tau0=1.0)


@pytest.fixture(scope="session")
def medium_b():
    return MaterialParams(G=6.5e10, G0=5.0e10, rho=2700.0, k=3.0, tau0=1.0)


@pytest.fixture(scope="session")
def medium_c():
    return MaterialParams(G=5.5e10, G0=4.0e10, rho=2700.0, k=3.0, tau0=1.0)


@pytest.fixture(scope="session")
def static_medium():
    return MaterialParams(G=8.0e10, G0=6.5e10, rho=2700.0, k=0.0, tau0=1.0)


@pytest.fixture(scope="session")
def quad_spec():
    return QuadratureSpec()


@pytest.fixture(scope="session")
def tight_spec():
    """Tolerances tight enough for 1e-9 relative checks on rho0."""
    return QuadratureSpec(abs_tol=1e-15, rel_tol=1e-13, max_doublings=40)


@pytest.fixture(scope="session")
def wave_a(medium_a):
    return derive_wave_params(medium_a)


@pytest.fixture(scope="session")
def kernel_a(wave_a, quad_spec):
    return KernelEvaluator(wave_a, quad_spec)


@pytest.fixture(scope="session")
def assembler_a(medium_a, quad_spec):
    return GalerkinAssembler(medium_a, quad_spec)


@pytest.fixture(scope="session")
def system_a20(assembler_a):
    return assembler_a.assemble(20)


@pytest.fixture(scope="session")
def system_a25(assembler_a):
    return assembler_a.assemble(25)


@pytest.fixture(scope="session")
def solution_a20(system_a20):
    return solve_system(system_a20)


@pytest.fixture(scope="session")
def solution_a25(system_a25):
    return solve_system(system_a25)
