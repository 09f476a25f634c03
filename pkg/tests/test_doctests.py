import doctest

import zerosum.groups
import zerosum.sequences


def test_groups_doctests():
    failures, _ = doctest.testmod(zerosum.groups)
    assert failures == 0


def test_sequences_doctests():
    failures, _ = doctest.testmod(zerosum.sequences)
    assert failures == 0
