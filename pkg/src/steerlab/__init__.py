"""steerlab: Bell nonlocality, EPR steering and genuine tripartite steering checks for qubits."""

__version__ = "0.1.0"
