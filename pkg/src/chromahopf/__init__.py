"""Exact verification engine for the coloured GL_q(2) quantum group."""
