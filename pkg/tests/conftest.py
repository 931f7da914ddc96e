import pytest
from fractions import Fraction

from curvlab.constructions.registry import (build_flat3, build_s2_round,
                                            build_h21_chart, build_flat_cosym5,
                                            build_sine_cone, build_r_warped_surface,
                                            build_s5_in_c3, build_hopf_pair)
from curvlab.frame import heisenberg_h21
from curvlab.structures import AlmostContactStructure


@pytest.fixture(scope="session")
def h21_frame():
    return AlmostContactStructure(heisenberg_h21(Fraction(3, 5), Fraction(4, 5)),
                                  name="h21")


@pytest.fixture(scope="session")
def h21_chart():
    return build_h21_chart()


@pytest.fixture(scope="session")
def s2_round():
    return build_s2_round()


@pytest.fixture(scope="session")
def flat3():
    return build_flat3()


@pytest.fixture(scope="session")
def flat_cosym5():
    return build_flat_cosym5()


@pytest.fixture(scope="session")
def sine_cone_cos():
    return build_sine_cone("cos")


@pytest.fixture(scope="session")
def sine_cone_sin():
    return build_sine_cone("sin")


@pytest.fixture(scope="session")
def r_warped_surface():
    return build_r_warped_surface()


@pytest.fixture(scope="session")
def s5_example():
    return build_s5_in_c3()


@pytest.fixture(scope="session")
def hopf_pair():
    return build_hopf_pair()
