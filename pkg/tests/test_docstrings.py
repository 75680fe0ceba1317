import doctest

import pytest

from conway_table import matrices, oracle, tangle3


class TestModuleExamples:
    @pytest.mark.parametrize("module", [matrices, tangle3, oracle], ids=lambda m: m.__name__)
    def test_examples_run(self, module):
        result = doctest.testmod(module, optionflags=doctest.NORMALIZE_WHITESPACE)
        assert result.attempted > 0
        assert result.failed == 0
