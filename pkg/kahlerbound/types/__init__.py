from .geometry import GeometryParams
from .constant import ConstantFamily, InequalityConstant
from .bound import BoundMethod, BoundParams, DiameterBound
from .quadrature import QuadratureEstimate
from .report import CheckReport, ChainStep, ChainReport, Report, PASS, FAIL, INFO
from .zonal import Representation, ZonalFunction, ProductFunction, ManifoldSpec
