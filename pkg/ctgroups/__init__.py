"""Curtis-Tits amalgams of SL2/SL3 over finite fields: construction, classification, witnesses."""

__version__ = "0.4.0"
