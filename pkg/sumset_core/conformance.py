# -*- coding: utf-8 -*-
"""Reference values for the closed-form thresholds and the basic geometric primitives.

The vectors ship with the package as `data.json` and double as a portable check for other
implementations. Every entry names a public function of `sumset_core`, the positional inputs
and the expected output:

```json
{
  "<function_name>": {
    "<test_name>": {
      "inputs": ["<value1>", "<value2>"],
      "outputs": "<value>"
      }
   }
}
```

Point clouds are nested lists of coordinates; a flat list is a cloud of 1-dimensional points.
Result objects are compared through their `dict()` form and floats agree within relative and
absolute tolerance `1e-9`.

!!! example
    ```json
    "n_main": {
      "test_0000_unit_thickness_line": {
        "inputs": [1, 1],
        "outputs": 5.82842712474619
      },
      ...
    ```
"""
from loguru import logger as log
import pathlib
import json
from typing import Callable, Any, Dict, Iterator, List, Optional, Sequence, Tuple
import sumset_core as sc


HERE = pathlib.Path(__file__).parent.absolute()
TEST_DATA = HERE / "data.json"


def conformance_testdata(functions=None):
    # type: (Optional[Sequence[str]]) -> Iterator[Tuple[str, Callable, List[Any], Any]]
    """
    Yield conformance vectors.

    :param functions: Restrict to these function names (default all)
    :return: Tuples of (test_name, func_obj, inputs, outputs)
    :rtype: Iterator[Tuple[str, Callable, List[Any], Any]]
    """
    with open(TEST_DATA, "rb") as stream:
        data = json.load(stream)
    for func_name, tests in data.items():
        if functions is not None and func_name not in functions:
            continue
        func_obj = getattr(sc, func_name)
        for test_name, test_values in tests.items():
            yield test_name, func_obj, test_values["inputs"], test_values["outputs"]


def conformance_report(functions=None):
    # type: (Optional[Sequence[str]]) -> Dict[str, Optional[str]]
    """
    Run the conformance vectors and collect one outcome per vector.

    :param functions: Restrict to these function names (default all)
    :return: Mapping of `function.test_name` to `None` (passed) or a failure description
    :rtype: Dict[str, Optional[str]]
    """
    outcomes = {}  # type: Dict[str, Optional[str]]
    for test_name, func, inputs, outputs in conformance_testdata(functions):
        key = f"{func.__name__}.{test_name}"
        try:
            result = func(*inputs)
        except Exception as e:
            outcomes[key] = f"raised {type(e).__name__}: {e}"
            continue
        if sc.approx_equal(result, outputs):
            outcomes[key] = None
        else:
            outcomes[key] = f"got {sc.to_jsonable(result)!r}, expected {outputs!r}"
    return outcomes


def conformance_selftest(functions=None):
    # type: (Optional[Sequence[str]]) -> bool
    """
    Run conformance tests.

    :param functions: Restrict to these function names (default all)
    :return: whether all tests passed
    :rtype: bool
    """
    outcomes = conformance_report(functions)
    for key, failure in outcomes.items():
        if failure is None:
            log.info(f"PASSED: {key}")
        else:
            log.error(f"FAILED: {key} {failure}")
    failed = sum(failure is not None for failure in outcomes.values())
    log.info(f"{len(outcomes) - failed} of {len(outcomes)} conformance vectors passed")
    return failed == 0
