import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almostnorlund.config import (
    ClassifyConfig,
    LipConfig,
    MethodConfig,
    QuadratureConfig,
    RunConfig,
    VerifyConfig,
    normalize,
    parse_config,
    serialize,
)
from almostnorlund.errors import ConfigError

MINIMAL = 'command = "rates"\nsignal = "weierstrass(0.9,12)"\nmethod = "cesaro(1)"\n'


def test_minimal_document_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.signal == "weierstrass(0.9, 12)"
    assert cfg.method == MethodConfig("cesaro(1)", "ones", "almost", 0)
    assert cfg.quadrature == QuadratureConfig()
    assert cfg.verify == VerifyConfig()
    assert cfg.lip == LipConfig()
    assert cfg.build_method().name == "(C,1)"


@pytest.mark.parametrize("text, needle", [
    ('command = "rates"\nsignal = "nosuch"\n', "unknown signal"),
    ('command = "rates"\nbogus = 1\n', "unknown key"),
    ('command = "rates"\n[quadrature]\npanel = 3\n', "unknown key"),
    ('command = "rates"\n[quadrature]\npv_panels = "many"\n', "expected integer"),
    ('command = "rates"\n[lip]\nalpha = true\n', "expected number"),
    ('command = "rates"\nn_values = [16, 8, 32]\n', "strictly increasing"),
    ('command = "rates"\nn_values = []\n', "non-empty"),
    ('command = "fly"\n', "unknown command"),
    ('signal = "square"\n', "missing"),
    ('command = "rates"\nmethod = "cesaro(-1)"\n', "positive"),
    ('command = "rates"\nmethod = "wavelet(2)"\n', "unknown method"),
    ('command = "rates"\nmethod = {p = "ones", mode = "sideways"}\n', "mode"),
    ('command = "rates"\n[lip]\nalpha = 1.5\n', "alpha"),
    ('command = "classify"\n[classify]\nvariation_class = "XBVS"\n', "HBVS or RBVS"),
    ('command = "rates"\n[quadrature]\ngrid_points = 8\n', "64 points"),
    ('command = "rates\n', "malformed"),
])
def test_errors(text, needle):
    with pytest.raises(ConfigError, match=needle):
        parse_config(text)


def test_classic_method_shorthands():
    def m(text):
        return parse_config(f'command = "rates"\nmethod = "{text}"\n').method
    assert m("harmonic") == MethodConfig("harmonic", "ones")
    assert m("norlund(linear)") == MethodConfig("linear", "ones")
    assert m("riesz(geometric(0.5))") == MethodConfig("ones", "geometric(0.5)")
    assert m("cesaro(0.50)").p == "cesaro(0.5)"


def test_infinite_r_round_trip():
    cfg = parse_config(MINIMAL + '[lip]\nr = "inf"\n')
    assert cfg.lip.r == math.inf
    assert "r = inf" in serialize(cfg)
    assert parse_config(serialize(cfg)) == cfg
    assert parse_config(MINIMAL + "[lip]\nr = inf\n") == cfg


def test_randtrig_signal_seeded():
    cfg = parse_config('command = "conjugate"\nsignal = "randtrig( 6 )"\nseed = 3\n')
    assert cfg.signal == "randtrig(6)"
    a, b = cfg.build_signal(), cfg.build_signal()
    assert a.exact_expansion(6) == b.exact_expansion(6) and a.degree == 6


# generated round trips -------------------------------------------------------------------

signals_st = st.sampled_from(["sawtooth", "square", "constant(2)", "cosk(3)", "sink(1)",
                              "weierstrass(0.9, 12)", "weierstrass(0.5, 8)", "randtrig(5)"])
weights_st = st.sampled_from(["ones", "harmonic", "linear", "cesaro(0.5)", "cesaro(2)",
                              "geometric(0.5)", "power(1.5)", "1, 0.5, 0.25"])
pos_float = st.floats(1e-3, 10.0, allow_nan=False)


@st.composite
def configs(draw):
    nv = sorted(draw(st.sets(st.integers(0, 4096), min_size=1, max_size=7)))
    return RunConfig(
        command=draw(st.sampled_from(["classify", "conjugate", "means", "rates",
                                      "corollaries"])),
        signal=draw(signals_st),
        method=MethodConfig(draw(weights_st), draw(weights_st),
                            draw(st.sampled_from(["almost", "ordinary"])),
                            draw(st.integers(0, 8))),
        sequence=draw(weights_st),
        n_values=tuple(nv),
        output=draw(st.text("abc/_-.0123", min_size=1, max_size=12)),
        seed=draw(st.integers(0, 2**31)),
        lip=LipConfig(draw(st.floats(0.01, 1.0)),
                      draw(st.one_of(st.just(math.inf), st.floats(1.0, 20.0)))),
        quadrature=QuadratureConfig(draw(st.integers(64, 65536)), draw(st.integers(64, 65536)),
                                    draw(st.integers(1, 16)), draw(pos_float),
                                    draw(st.integers(16, 4096)), draw(st.integers(1, 8))),
        verify=VerifyConfig(draw(st.floats(0, 1)), draw(st.floats(-1, 1)),
                            draw(st.integers(1, 512)), draw(pos_float)),
        classify=ClassifyConfig(draw(st.sampled_from(["HBVS", "RBVS", "hbvs"])),
                                draw(st.integers(1, 512)),
                                draw(st.one_of(st.none(), st.integers(512, 4096))),
                                draw(st.one_of(st.none(), pos_float))),
    )


@settings(max_examples=50, deadline=None)
@given(configs())
def test_serialize_parse_round_trip(cfg):
    norm = normalize(cfg)
    text = serialize(cfg)
    assert parse_config(text) == norm
    assert serialize(parse_config(text)) == serialize(norm)
