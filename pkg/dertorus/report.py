'''Verification report entries and their JSON form.'''

import json
from fractions import Fraction

from dertorus.exact import format_rational

PASS = 'pass'
FAIL = 'fail'


def jsonable(value):
    '''Turn exact values into JSON friendly data.

    Fractions become ``p/q`` strings (plain ints when integral), tuples
    become lists, dict keys become strings.
    '''
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return format_rational(value)
    if isinstance(value, int):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return dict((k if isinstance(k, str) else str(jsonable(k)),
                     jsonable(v)) for k, v in value.items())
    if hasattr(value, 'to_text'):
        return value.to_text()
    return value


class Report(object):
    '''Outcome of checking one identity over a number of instances.'''

    def __init__(self, identity, statement, instances_checked=0,
                 status=PASS, witness=None, evidence=None):
        self.identity = identity
        self.statement = statement
        self.instances_checked = instances_checked
        self.status = status
        self.witness = witness
        #: measured values or certificates, kept on success as well
        self.evidence = evidence

    @property
    def passed(self):
        return self.status == PASS

    def fail(self, witness):
        '''Record the first counterexample; later ones are ignored.'''
        if self.status == PASS:
            self.status = FAIL
            self.witness = witness

    def to_json(self):
        data = {
            'identity': self.identity,
            'statement': self.statement,
            'instances_checked': self.instances_checked,
            'status': self.status,
        }
        if self.witness is not None:
            data['witness'] = jsonable(self.witness)
        if self.evidence is not None:
            data['evidence'] = jsonable(self.evidence)
        return data

    def __repr__(self):
        return 'Report({!r}, {}, {} instances)'.format(
            self.identity, self.status, self.instances_checked)


def dumps(data):
    return json.dumps(jsonable(data), indent=2, sort_keys=True)