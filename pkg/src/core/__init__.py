from .config import get_settings
from .harness import convergence_profile, evaluate_config, gen_corpus, sweep
from .reports import parse_csv, render_csv, render_markdown

__all__ = [
    'get_settings',
    'gen_corpus',
    'evaluate_config',
    'sweep',
    'convergence_profile',
    'render_csv',
    'parse_csv',
    'render_markdown',
]
