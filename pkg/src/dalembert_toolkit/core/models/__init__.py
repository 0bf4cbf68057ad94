"""Domain models of the d'Alembert toolkit."""
from .bordism import *
from .characteristics import *
from .conservation import *
from .dalembert import *
from .exceptions import *
from .exotic import *
from .expressions import *
from .fields import *
from .jets import *
from .stability import *
