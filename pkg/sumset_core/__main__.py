# -*- coding: utf-8 -*-
import sys
import sumset_core as sc
from sumset_core.cli import main


def selftest():
    return sc.conformance_selftest()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
