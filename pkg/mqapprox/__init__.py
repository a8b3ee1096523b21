from importlib.metadata import version

__version__ = version("mqapprox")
__all__ = []
