from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ecoimpact import RequirementParseError, parse_requirement


def test_plain_version_constraint():
    req = parse_requirement("requests>=2.0,<3")
    assert req.target_name == "requests"
    assert not req.is_optional
    assert not req.has_environment_marker


def test_extra_marker_is_optional():
    req = parse_requirement("pytest ; extra == 'test'")
    assert req.target_name == "pytest"
    assert req.is_optional
    assert req.has_environment_marker


def test_marker_without_extra():
    req = parse_requirement("NumPy (>=1.21) ; python_version >= '3.8'")
    assert req.target_name == "numpy"
    assert not req.is_optional
    assert req.has_environment_marker


def test_extras_bracket_list():
    req = parse_requirement("requests[security,socks]>=2.8.1")
    assert req.target_name == "requests"
    assert not req.is_optional


def test_url_requirement():
    req = parse_requirement("pip @ https://example.com/pip-23.0-py3-none-any.whl")
    assert req.target_name == "pip"


def test_extra_combined_with_other_markers():
    req = parse_requirement('sphinx ; python_version < "3.11" and extra == "docs"')
    assert req.is_optional
    assert req.has_environment_marker


def test_quoted_extra_literal_is_not_an_extra_gate():
    req = parse_requirement("foo ; os_name == 'extra'")
    assert not req.is_optional
    assert req.has_environment_marker


def test_raw_preserved():
    raw = "Django >= 4.2 ; extra=='dev'"
    req = parse_requirement(raw)
    assert req.raw == raw
    assert req.target_name == "django"


def test_empty_marker_after_semicolon():
    req = parse_requirement("foo ;   ")
    assert not req.has_environment_marker
    assert not req.is_optional


@pytest.mark.parametrize(
    "spec,offset",
    [
        ("", 0),
        (">=1.0", 0),
        ("   >=1.0", 3),
        ("; extra == 'x'", 0),
        (".leading", 0),
    ],
)
def test_parse_errors_carry_offset(spec, offset):
    with pytest.raises(RequirementParseError) as excinfo:
        parse_requirement(spec)
    assert excinfo.value.offset == offset
    assert excinfo.value.spec == spec


name_chars = st.text(
    alphabet=st.sampled_from("abcdefghijklmnopqrstuvwxyz0123456789"), min_size=1, max_size=20
)


@given(name_chars, st.sampled_from(["", ">=1.0", "(>=1.0,<2)", "[x]>=2", " @ https://e/x"]))
def test_name_extraction_ignores_version_clutter(name, tail):
    req = parse_requirement(f"{name}{tail}")
    assert req.target_name == name


@given(name_chars, st.booleans())
def test_marker_flags(name, optional):
    marker = "extra == 'fast'" if optional else "python_version >= '3.9'"
    req = parse_requirement(f"{name} ; {marker}")
    assert req.is_optional == optional
    assert req.has_environment_marker
