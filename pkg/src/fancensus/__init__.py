"""fancensus: enumerate and classify maximal rational polyhedral fans on a
fixed spanning set of integer rays, via the dual torus-action picture."""

__version__ = "0.1.0"
