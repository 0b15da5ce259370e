import pytest

from rhygarch import InnovationDist, RhygarchParams


def make_model1() -> RhygarchParams:
    """Gaussian study model: hyperbolic filter with leverage."""
    return RhygarchParams(omega=0.1, gamma=0.1, beta=0.4, delta=0.4, d=0.4,
                          xi=-0.1, phi=1.0, tau1=-0.08, tau2=0.06,
                          sigma_u=0.4)


def make_model2() -> RhygarchParams:
    """Same dynamics with standardized Student-t(3) return shocks."""
    return make_model1().replace(innovation=InnovationDist.student_t(3.0))


@pytest.fixture
def model1() -> RhygarchParams:
    return make_model1()


@pytest.fixture
def model2() -> RhygarchParams:
    return make_model2()
