"""Docstring examples stay true."""

import doctest

import asymhecke.coeffring
import asymhecke.weyl


def test_module_doctests():
    for module in (asymhecke.coeffring, asymhecke.weyl):
        result = doctest.testmod(module)
        assert result.failed == 0, module.__name__
        assert result.attempted > 0, module.__name__
