"""Reference convolutions and data signals"""
