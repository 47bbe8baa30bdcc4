#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""FR-FCFS scheduling with row policies, refresh postponement and preventive refresh.

Each tick issues at most one command per channel. Per channel the priority
order is:

1. the forced precharge of a capped row at exactly ``opened_at + t_mro``
2. refresh work of a rank that owes REFs it may not (or need not) postpone
3. queued preventive refreshes, closing the bank first if needed
4. the oldest ready row hit
5. the precharge or activate serving the oldest remaining request

Commands are applied to the device as they are issued, so an illegal choice
surfaces immediately as an ``IllegalCommandError``.
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Iterable
import math
from typing import Protocol

from attrs import define, field

from disturbsim.config.defaults import DEFAULT_QUEUE_CAPACITY
from disturbsim.controller.policy import RowPolicy
from disturbsim.controller.requests import MemoryRequest
from disturbsim.dram.commands import Command, RefreshPerformed, RowClosed
from disturbsim.dram.device import DramDevice
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.refresh import rows_refreshed_by
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError
from disturbsim.mitigation.base import Mitigation, NoMitigation
from disturbsim.types import CommandKind, RequestKind, RowPolicyKind


class RowStateSink(Protocol):
    """Receives the row-level effects of scheduling (rows are physical)."""

    def row_closed(self, bank: int, row: int, on_time: int, time: int) -> None: ...

    def rows_restored(self, bank: int, rows: Iterable[int], time: int) -> None: ...


class _NullSink:
    def row_closed(self, bank: int, row: int, on_time: int, time: int) -> None:
        return None

    def rows_restored(self, bank: int, rows: Iterable[int], time: int) -> None:
        return None


@define(slots=True, eq=False)
class QueuedRequest:
    seq: int
    request: MemoryRequest
    served: bool = False

    @property
    def row(self) -> int:
        return self.request.address.row


@define(slots=True)
class BankQueue:
    """Requests of one bank: arrival order plus a per-row index.

    Served entries are dropped from the arrival deque lazily.
    """

    capacity: int
    arrivals: deque[QueuedRequest] = field(factory=deque)
    by_row: dict[int, deque[QueuedRequest]] = field(factory=dict)
    overflow: deque[QueuedRequest] = field(factory=deque)
    live: int = 0

    def __len__(self) -> int:
        return self.live + len(self.overflow)

    def push(self, entry: QueuedRequest) -> bool:
        """Queue ``entry``; False when the queue is full and it was staged."""
        if self.live >= self.capacity:
            self.overflow.append(entry)
            return False
        self._admit(entry)
        return True

    def _admit(self, entry: QueuedRequest) -> None:
        self.arrivals.append(entry)
        self.by_row.setdefault(entry.row, deque()).append(entry)
        self.live += 1

    def oldest(self) -> QueuedRequest | None:
        while self.arrivals and self.arrivals[0].served:
            self.arrivals.popleft()
        return self.arrivals[0] if self.arrivals else None

    def hit(self, row: int) -> QueuedRequest | None:
        entries = self.by_row.get(row)
        return entries[0] if entries else None

    def serve(self, entry: QueuedRequest) -> None:
        entries = self.by_row[entry.row]
        entries.popleft()
        if not entries:
            del self.by_row[entry.row]
        entry.served = True
        self.live -= 1
        if self.overflow:
            self._admit(self.overflow.popleft())


@define(slots=True)
class RefreshState:
    """Refresh bookkeeping of one rank. ``owed`` counts due but unissued REFs."""

    next_due: int
    owed: int = 0
    issued: int = 0
    postponed: int = 0
    max_debt: int = 0


@define(slots=True)
class SchedulerStats:
    served: int = 0
    row_hits: int = 0
    row_misses: int = 0
    backpressure: int = 0
    preventive_refreshes: int = 0
    commands: Counter[str] = field(factory=Counter)
    latencies: list[int] = field(factory=list)
    acts: Counter[tuple[int, int, int]] = field(factory=Counter)
    t_agg_on: Counter[int] = field(factory=Counter)


class Scheduler:
    """Memory controller for every channel of one device."""

    def __init__(
        self,
        geometry: Geometry,
        timing: TimingParams,
        policy: RowPolicy,
        mitigation: Mitigation | None = None,
        sink: RowStateSink | None = None,
        *,
        queue_capacity: int = DEFAULT_QUEUE_CAPACITY,
        refresh_enabled: bool = True,
        record_commands: bool = False,
    ) -> None:
        if queue_capacity < 1:
            raise ConfigurationError("controller.queue_capacity", "must be >= 1")
        policy.check(timing)
        self.geometry = geometry
        self.timing = timing
        self.policy = policy
        self.mitigation = mitigation or NoMitigation()
        self.sink: RowStateSink = sink or _NullSink()
        self.refresh_enabled = refresh_enabled
        self.record_commands = record_commands
        self.device = DramDevice(geometry, timing)
        self.queues = [BankQueue(queue_capacity) for _ in range(geometry.total_banks)]
        self.preventive: list[dict[int, None]] = [{} for _ in range(geometry.total_banks)]
        self.fresh_act = [False] * geometry.total_banks
        ranks = geometry.channels * geometry.ranks
        self.refresh = [RefreshState(next_due=timing.tREFI) for _ in range(ranks)]
        per_channel = geometry.ranks * geometry.banks_per_rank
        self.channel_banks = [range(c * per_channel, (c + 1) * per_channel) for c in range(geometry.channels)]
        self.channel_ranks = [range(c * geometry.ranks, (c + 1) * geometry.ranks) for c in range(geometry.channels)]
        self.stats = SchedulerStats()
        self.command_log: list[Command] = []
        self.warnings: list[str] = []
        self._seq = 0

    # ---- queues ----

    def enqueue(self, request: MemoryRequest) -> bool:
        """Queue a request; False (and one backpressure event) when its bank queue is full."""
        flat = self.geometry.flat_bank(request.address)
        entry = QueuedRequest(self._seq, request)
        self._seq += 1
        accepted = self.queues[flat].push(entry)
        if not accepted:
            self.stats.backpressure += 1
        return accepted

    def queued(self) -> int:
        return sum(len(q) for q in self.queues)

    def idle(self) -> bool:
        return all(len(q) == 0 for q in self.queues)

    def drained(self) -> bool:
        """No queued requests and no queued preventive refreshes."""
        return self.idle() and not any(self.preventive)

    def rank_idle(self, rank: int) -> bool:
        return all(len(self.queues[b]) == 0 for b in self.geometry.banks_of_rank(rank))

    # ---- refresh ----

    def _advance_refresh_clock(self, now: int) -> None:
        for rank, state in enumerate(self.refresh):
            while state.next_due <= now:
                state.owed += 1
                state.next_due += self.timing.tREFI
                if state.owed <= self.timing.max_postponed_refs and not self.rank_idle(rank):
                    state.postponed += 1
                    state.max_debt = max(state.max_debt, state.owed)

    def refresh_pending(self, rank: int) -> bool:
        state = self.refresh[rank]
        if state.owed > self.timing.max_postponed_refs:
            return True
        return state.owed > 0 and self.rank_idle(rank)

    def _refresh_step(self, rank: int, now: int) -> Command | None:
        all_closed = True
        for flat in self.geometry.banks_of_rank(rank):
            state = self.device.banks[flat]
            if state.is_open:
                all_closed = False
                if now >= state.pre_ready_at(self.timing):
                    return self._issue_pre(flat, now)
        if not all_closed:
            return None
        address = self.geometry.bank_address(self.geometry.banks_of_rank(rank).start)
        cmd = Command(CommandKind.REF, address, now)
        if not self.device.validate_command(cmd).legal:
            return None
        event = self._apply(cmd)
        assert isinstance(event, RefreshPerformed)
        state = self.refresh[rank]
        state.owed -= 1
        state.issued += 1
        banks = self.geometry.banks_of_rank(rank)
        rows = rows_refreshed_by(event, self.geometry.rows, self.timing)
        for flat in banks:
            self.sink.rows_restored(flat, rows, now)
        targets: dict[int, list[int]] = {}
        for flat, row in self.mitigation.on_refresh(banks, now):
            targets.setdefault(flat, []).append(row)
        for flat, victims in targets.items():
            self.sink.rows_restored(flat, victims, now)
        return cmd

    # ---- command issue ----

    def _apply(self, cmd: Command) -> object:
        event = self.device.apply_command(cmd)
        self.stats.commands[cmd.kind.value] += 1
        if self.record_commands:
            self.command_log.append(cmd)
        return event

    def _issue_pre(self, flat: int, now: int) -> Command:
        state = self.device.banks[flat]
        row = state.open_row
        assert row is not None
        cmd = Command(CommandKind.PRE, self.geometry.bank_address(flat, row), now)
        event = self._apply(cmd)
        assert isinstance(event, RowClosed)
        self.stats.t_agg_on[event.t_agg_on] += 1
        self.sink.row_closed(flat, self.geometry.physical_row(row), event.t_agg_on, now)
        return cmd

    def _issue_act(self, flat: int, row: int, now: int) -> Command:
        cmd = Command(CommandKind.ACT, self.geometry.bank_address(flat, row), now)
        self._apply(cmd)
        physical = self.geometry.physical_row(row)
        self.stats.acts[(now // self.timing.tREFW, flat, physical)] += 1
        self.fresh_act[flat] = True
        pending = self.preventive[flat]
        for victim in self.mitigation.on_activate(flat, physical, now):
            pending[victim] = None
        return cmd

    def _issue_column(self, flat: int, entry: QueuedRequest, now: int) -> Command:
        request = entry.request
        kind = CommandKind.WR if request.kind is RequestKind.WRITE else CommandKind.RD
        cmd = Command(kind, self.geometry.bank_address(flat, entry.row, request.address.column), now)
        self._apply(cmd)
        self.queues[flat].serve(entry)
        self.stats.served += 1
        self.stats.latencies.append(now + self.timing.tCOL - request.arrival_time)
        if self.fresh_act[flat]:
            self.stats.row_misses += 1
            self.fresh_act[flat] = False
        else:
            self.stats.row_hits += 1
        return cmd

    def _preventive_step(self, flat: int, now: int) -> Command | bool:
        """Advance one queued preventive refresh. True when the bank was occupied."""
        state = self.device.banks[flat]
        if state.is_open:
            if now >= state.pre_ready_at(self.timing):
                return self._issue_pre(flat, now)
            return False
        if now < state.act_ready_at(self.timing):
            return False
        pending = self.preventive[flat]
        row = next(iter(pending))
        del pending[row]
        self.device.occupy_bank(flat, now, self.timing.tRC)
        self.stats.preventive_refreshes += 1
        self.sink.rows_restored(flat, (row,), now)
        return True

    def _capped_deadline(self, flat: int) -> int | None:
        state = self.device.banks[flat]
        if not state.is_open:
            return None
        return self.policy.close_deadline(state.opened_at)

    def _schedule_channel(self, channel: int, now: int) -> tuple[bool, Command | None]:
        banks = self.channel_banks[channel]
        timing = self.timing

        if self.policy.is_capped:
            for flat in banks:
                deadline = self._capped_deadline(flat)
                if deadline is not None and now >= deadline:
                    return True, self._issue_pre(flat, now)

        pending_ranks = set()
        if self.refresh_enabled:
            for rank in self.channel_ranks[channel]:
                if self.refresh_pending(rank):
                    pending_ranks.add(rank)
                    cmd = self._refresh_step(rank, now)
                    if cmd is not None:
                        return True, cmd

        for flat in banks:
            if self.preventive[flat]:
                outcome = self._preventive_step(flat, now)
                if isinstance(outcome, Command):
                    return True, outcome
                if outcome:
                    return True, None

        best_hit: tuple[int, QueuedRequest] | None = None
        for flat in banks:
            state = self.device.banks[flat]
            if state.open_row is None or self.preventive[flat]:
                continue
            if self.geometry.rank_of_bank(flat) in pending_ranks:
                continue
            entry = self.queues[flat].hit(state.open_row)
            if entry is None or now < state.column_ready_at(timing):
                continue
            deadline = self._capped_deadline(flat)
            if deadline is not None and now + timing.tCOL > deadline:
                continue
            if best_hit is None or entry.seq < best_hit[1].seq:
                best_hit = (flat, entry)
        if best_hit is not None:
            return True, self._issue_column(best_hit[0], best_hit[1], now)

        best_key = math.inf
        best_action: tuple[CommandKind, int, int] | None = None
        for flat in banks:
            if self.preventive[flat] or self.geometry.rank_of_bank(flat) in pending_ranks:
                continue
            state = self.device.banks[flat]
            queue = self.queues[flat]
            if state.open_row is not None:
                if now < state.pre_ready_at(timing):
                    continue
                hit = queue.hit(state.open_row)
                if hit is not None:
                    deadline = self._capped_deadline(flat)
                    earliest = max(now, state.column_ready_at(timing))
                    if deadline is not None and earliest + timing.tCOL > deadline and hit.seq < best_key:
                        best_key, best_action = hit.seq, (CommandKind.PRE, flat, 0)
                    continue
                oldest = queue.oldest()
                if oldest is not None:
                    key: float = oldest.seq
                elif self.policy.kind is RowPolicyKind.CLOSED_PAGE:
                    key = -1
                else:
                    continue
                if key < best_key:
                    best_key, best_action = key, (CommandKind.PRE, flat, 0)
            else:
                oldest = queue.oldest()
                if oldest is None or now < state.act_ready_at(timing):
                    continue
                if oldest.seq < best_key:
                    best_key, best_action = oldest.seq, (CommandKind.ACT, flat, oldest.row)

        if best_action is None:
            return False, None
        kind, flat, row = best_action
        if kind is CommandKind.PRE:
            return True, self._issue_pre(flat, now)
        return True, self._issue_act(flat, row, now)

    def tick(self, now: int) -> tuple[list[Command], float]:
        """Issue at most one command per channel at ``now``.

        Returns the issued commands and the earliest time at which another
        command could become issuable without a new arrival.
        """
        if self.refresh_enabled:
            self._advance_refresh_clock(now)
        issued: list[Command] = []
        busy = False
        for channel in range(self.geometry.channels):
            acted, cmd = self._schedule_channel(channel, now)
            busy = busy or acted
            if cmd is not None:
                issued.append(cmd)
        if busy:
            return issued, now + 1
        return issued, self.next_event_time(now)

    def next_event_time(self, now: int) -> float:
        """Earliest future time at which a timing-gated command may become legal."""
        timing = self.timing
        candidates: list[int] = []
        if self.refresh_enabled:
            candidates.extend(state.next_due for state in self.refresh)
        for flat, state in enumerate(self.device.banks):
            has_work = len(self.queues[flat]) > 0 or bool(self.preventive[flat])
            if state.is_open:
                candidates.append(state.pre_ready_at(timing))
                if has_work:
                    column_ready = state.column_ready_at(timing)
                    candidates.append(column_ready)
                deadline = self._capped_deadline(flat)
                if deadline is not None:
                    candidates.append(deadline)
                    candidates.append(deadline - timing.tCOL + 1)
            else:
                candidates.append(state.busy_until)
                if state.last_precharge_at is not None:
                    candidates.append(state.last_precharge_at + timing.tRP)
                if has_work:
                    candidates.append(state.act_ready_at(timing))
        future = [t for t in candidates if t > now]
        return min(future) if future else math.inf

    def close_open_rows(self, now: int) -> None:
        """Account the on-time of rows still open at the end of a run (no command issued)."""
        for flat, state in enumerate(self.device.banks):
            if state.open_row is not None and now - state.opened_at >= self.timing.tRAS:
                on_time = now - state.opened_at
                self.stats.t_agg_on[on_time] += 1
                self.sink.row_closed(flat, self.geometry.physical_row(state.open_row), on_time, now)


# 🔨💾🔚
