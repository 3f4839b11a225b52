"""Spectra, decoherence rates, stability criteria and cavity-transfer
fidelities of rotational-ensemble qubits in self-assembled dipolar crystals."""

__version__ = "0.1.0"
