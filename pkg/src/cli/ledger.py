#!/usr/bin/env python3
"""
Verification ledger - one row per check, plus engine-derived constants
Published-formula mismatches are first-class rows, not stderr warnings
"""

import sys
from dataclasses import dataclass, field
from enum import Enum


class CheckStatus(Enum):
    PASS = 'pass'
    FAIL = 'fail'
    DISCREPANCY = 'paper-discrepancy'


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    status: CheckStatus
    details: str = ''

    def to_json(self):
        return {'name': self.name, 'status': self.status.value, 'details': self.details}


@dataclass
class VerificationLedger:
    entries: list = field(default_factory=list)
    constants: dict = field(default_factory=dict)

    def record(self, name, status, details=''):
        entry = LedgerEntry(name, CheckStatus(status), str(details))
        self.entries.append(entry)

        marker = {CheckStatus.PASS: '✅', CheckStatus.FAIL: '❌', CheckStatus.DISCREPANCY: '⚠️ '}[entry.status]
        line = f"{marker} {name}"
        if entry.details and entry.status is not CheckStatus.PASS:
            line += f": {entry.details}"
        print(line, file=sys.stderr)
        return entry

    def passed_check(self, name, details=''):
        return self.record(name, CheckStatus.PASS, details)

    def failed_check(self, name, details=''):
        return self.record(name, CheckStatus.FAIL, details)

    def discrepancy(self, name, details=''):
        return self.record(name, CheckStatus.DISCREPANCY, details)

    def constant(self, key, value):
        self.constants[key] = value

    def count(self, status):
        return sum(1 for e in self.entries if e.status is status)

    @property
    def passed(self):
        """Discrepancy rows are informational and never fail a run"""
        return self.count(CheckStatus.FAIL) == 0

    def first_failure(self):
        return next((e for e in self.entries if e.status is CheckStatus.FAIL), None)

    def to_json(self):
        return [e.to_json() for e in self.entries]

    def csv_rows(self):
        return [[e.name, e.status.value, e.details] for e in self.entries]

    def print_summary(self, file=sys.stderr):
        print(f"\n{'='*60}", file=file)
        print("📊 VERIFICATION SUMMARY", file=file)
        print('='*60, file=file)
        print(f"✅ Passed: {self.count(CheckStatus.PASS)}", file=file)
        print(f"❌ Failed: {self.count(CheckStatus.FAIL)}", file=file)
        print(f"⚠️  Published-formula discrepancies: {self.count(CheckStatus.DISCREPANCY)}", file=file)
        for key in sorted(self.constants):
            print(f"   {key}: {self.constants[key]}", file=file)

        failure = self.first_failure()
        if failure:
            print(f"\n❌ First counterexample ({failure.name}): {failure.details}", file=file)
        elif self.entries:
            print("\n🎉 All selected checks passed", file=file)
        print('='*60, file=file)
