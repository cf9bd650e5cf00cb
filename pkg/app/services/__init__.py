"""Run orchestration services"""
