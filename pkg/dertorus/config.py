'''Run configuration: defaults, the key = value config file and checks.'''

import collections
from fractions import Fraction

from dertorus.exact import as_rational

MODES = ('der', 'ader')


class ConfigError(ValueError):
    pass


_FIELDS = (
    'd', 'seed', 'box', 'trials', 'k_max', 'word_length', 'window',
    'weights', 'b', 'alpha', 'mode', 'jobs', 'fault_inject', 'algebra',
)


class RunConfig(collections.namedtuple('RunConfig', _FIELDS)):
    '''Immutable parameters of one run.

    ``alpha`` may be left as None; it then defaults to (1/2, 0, ..., 0)
    for the configured d.
    '''
    __slots__ = ()

    @property
    def module_alpha(self):
        if self.alpha is not None:
            return self.alpha
        return (Fraction(1, 2),) + (Fraction(0),) * (self.d - 1)

    def validate(self):
        if self.d < 2:
            raise ConfigError('d must be >= 2, got {}'.format(self.d))
        for name in ('box', 'trials', 'k_max', 'word_length', 'window',
                     'jobs'):
            if getattr(self, name) < 1:
                raise ConfigError('{} must be positive, got {}'.format(
                    name, getattr(self, name)))
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError('seed must fit in 64 bits')
        if self.mode not in MODES:
            raise ConfigError('mode must be one of {}, got {!r}'.format(
                ', '.join(MODES), self.mode))
        if self.weights is not None and len(self.weights) != self.d - 1:
            raise ConfigError('{} weight coefficients given for d={}'.format(
                len(self.weights), self.d))
        if self.weights is not None and any(a < 0 for a in self.weights):
            raise ConfigError('weight coefficients must be non-negative')
        if self.alpha is not None and len(self.alpha) != self.d:
            raise ConfigError('alpha has {} coordinates for d={}'.format(
                len(self.alpha), self.d))
        return self


DEFAULTS = RunConfig(
    d=2, seed=0, box=3, trials=1000, k_max=4, word_length=6, window=3,
    weights=(1,), b=Fraction(1), alpha=None, mode='der', jobs=1,
    fault_inject=False, algebra=None)


def parse_int(value):
    try:
        return int(value.strip())
    except ValueError:
        raise ConfigError('not an integer: {!r}'.format(value))


def parse_rational(value):
    try:
        return as_rational(value)
    except (ValueError, ZeroDivisionError):
        raise ConfigError('not an exact rational: {!r}'.format(value))


def parse_list(value, convert):
    value = value.strip()
    if not value:
        return ()
    return tuple(convert(item) for item in value.split(','))


def parse_bool(value):
    value = value.strip().lower()
    if value in ('1', 'yes', 'true', 'on'):
        return True
    if value in ('0', 'no', 'false', 'off'):
        return False
    raise ConfigError('not a boolean: {!r}'.format(value))


PARSERS = {
    'd': parse_int,
    'seed': parse_int,
    'box': parse_int,
    'trials': parse_int,
    'k_max': parse_int,
    'word_length': parse_int,
    'window': parse_int,
    'weights': lambda value: parse_list(value, parse_int),
    'b': parse_rational,
    'alpha': lambda value: parse_list(value, parse_rational),
    'mode': lambda value: value.strip(),
    'jobs': parse_int,
    'fault_inject': parse_bool,
    'algebra': lambda value: value.strip(),
}


def parse_config(text):
    '''Parse ``key = value`` lines into a dict of overrides.

    ``#`` starts a comment, blank lines are ignored, dashes in keys are
    accepted for underscores.
    '''
    overrides = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError('line {}: expected key = value, got {!r}'.format(
                lineno, line))
        key, value = line.split('=', 1)
        key = key.strip().replace('-', '_')
        if key not in PARSERS:
            raise ConfigError('line {}: unknown key {!r}'.format(lineno, key))
        try:
            overrides[key] = PARSERS[key](value)
        except ConfigError as e:
            raise ConfigError('line {}: {}'.format(lineno, e))
    return overrides


def load_config(path):
    try:
        with open(path) as config_file:
            return parse_config(config_file.read())
    except OSError as e:
        raise ConfigError('cannot read {}: {}'.format(path, e.strerror))


def make_config(*override_sets):
    '''DEFAULTS updated by each override dict in turn, then validated.

    Without an explicit d, d is taken from the weights (one more than
    their number) or else from alpha. An explicit d must agree with both.
    '''
    values = {}
    for overrides in override_sets:
        values.update((k, v) for k, v in overrides.items() if v is not None)
    if 'd' not in values:
        if 'weights' in values:
            values['d'] = len(values['weights']) + 1
        elif 'alpha' in values:
            values['d'] = len(values['alpha'])
    config = DEFAULTS._replace(**values)
    if 'd' in values and 'weights' not in values:
        # default weight delta_1 for the configured d
        config = config._replace(
            weights=(1,) + (0,) * (config.d - 2) if config.d >= 2 else ())
    return config.validate()
