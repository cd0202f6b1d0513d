"""Command line applications of bessel_zeros"""
