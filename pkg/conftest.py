import os
import sys

# Модули проекта импортируются по именам верхнего уровня (config, core, search, ...)
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
