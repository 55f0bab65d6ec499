"""Near-field power-classification attack simulation."""
