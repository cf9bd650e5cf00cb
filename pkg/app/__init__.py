"""Convolution Quadrature engine: multistep and Runge-Kutta CQ, fast solvers and wave scattering"""
