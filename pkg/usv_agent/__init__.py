"""USV autonomy stack: marine simulator, navigation, perception and learning"""

__version__ = "0.1.0"
