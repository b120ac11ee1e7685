"""gradpush: simulador de stochastic gradient-push sobre grafos dirigidos variables en el tiempo."""

__version__ = "0.1.0"
