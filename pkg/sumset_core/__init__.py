__version__ = "0.1.0"
from sumset_core.options import core_opts, conformant_options

# Import full api to toplevel
from sumset_core.conformance import *
from sumset_core.constants import *

from sumset_core.utils import *
from sumset_core.models import *
from sumset_core.simplex import *
from sumset_core.core_geometry import *
from sumset_core.caratheodory_sf import *
from sumset_core.thick_sets import *
from sumset_core.oracles import *
from sumset_core.interior_certifier import *
from sumset_core.thresholds import *
from sumset_core.schema import *
