//! Instrumentation shared by every construction: operation counters and an
//! allocation ledger for the major arrays.

use std::collections::BTreeMap;

/// Operation counters. Each construction adds to the fields it touches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Symbol comparisons between two suffixes, mismatches included.
    pub char_comparisons: u64,
    /// Reads of the text at data-dependent positions.
    pub text_accesses: u64,
    pub enqueues: u64,
    pub dequeues: u64,
    /// Values written to a queue at their own index.
    pub home_writes: u64,
    /// Values written ahead of the scan to index `LF[i] > i`.
    pub forward_writes: u64,
    /// Phase-2 comparisons performed at irreducible (non-⊥) entries.
    pub phase2_irreducible_comparisons: u64,
    /// Phase-2 comparisons performed at reducible (⊥) entries. Always 0.
    pub phase2_reducible_comparisons: u64,
    /// Stack trims performed by the range-minimum stack.
    pub stack_trims: u64,
    pub max_stack_len: u64,
    /// High-water mark of queue values held in memory, in bytes.
    pub max_queue_buffered_bytes: u64,
}

impl Counters {
    pub fn merge(&mut self, o: &Counters) {
        self.char_comparisons += o.char_comparisons;
        self.text_accesses += o.text_accesses;
        self.enqueues += o.enqueues;
        self.dequeues += o.dequeues;
        self.home_writes += o.home_writes;
        self.forward_writes += o.forward_writes;
        self.phase2_irreducible_comparisons += o.phase2_irreducible_comparisons;
        self.phase2_reducible_comparisons += o.phase2_reducible_comparisons;
        self.stack_trims += o.stack_trims;
        self.max_stack_len = self.max_stack_len.max(o.max_stack_len);
        self.max_queue_buffered_bytes = self.max_queue_buffered_bytes.max(o.max_queue_buffered_bytes);
    }
}

/// Ledger of resident major arrays.
///
/// Algorithms register every array they hold in memory for a sizable
/// stretch of the run; streamed inputs and outputs are not registered.
/// Phases can be labeled so that peaks are reported per phase.
#[derive(Clone, Debug, Default)]
pub struct SpaceLedger {
    live: BTreeMap<&'static str, usize>,
    current: usize,
    peak: usize,
    phase: Option<&'static str>,
    phase_peaks: BTreeMap<&'static str, usize>,
    phase_snapshot: BTreeMap<&'static str, BTreeMap<&'static str, usize>>,
}

impl SpaceLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `bytes` under `name`, replacing any previous entry.
    pub fn hold(&mut self, name: &'static str, bytes: usize) {
        if let Some(old) = self.live.insert(name, bytes) {
            self.current -= old;
        }
        self.current += bytes;
        self.peak = self.peak.max(self.current);
        if let Some(p) = self.phase {
            let pk = self.phase_peaks.entry(p).or_insert(0);
            if self.current >= *pk {
                *pk = self.current;
                self.phase_snapshot.insert(p, self.live.clone());
            }
        }
    }

    pub fn release(&mut self, name: &'static str) {
        if let Some(old) = self.live.remove(name) {
            self.current -= old;
        }
    }

    /// Starts a labeled phase; the arrays already held count toward it.
    pub fn begin_phase(&mut self, name: &'static str) {
        self.phase = Some(name);
        let pk = self.phase_peaks.entry(name).or_insert(0);
        if self.current >= *pk {
            *pk = self.current;
            self.phase_snapshot.insert(name, self.live.clone());
        }
    }

    pub fn end_phase(&mut self) {
        self.phase = None;
    }

    pub fn current(&self) -> usize {
        self.current
    }

    pub fn peak(&self) -> usize {
        self.peak
    }

    pub fn phase_peak(&self, name: &str) -> Option<usize> {
        self.phase_peaks.get(name).copied()
    }

    /// Arrays live at the moment `name` reached its peak.
    pub fn phase_breakdown(&self, name: &str) -> Option<&BTreeMap<&'static str, usize>> {
        self.phase_snapshot.get(name)
    }

    pub fn live(&self) -> &BTreeMap<&'static str, usize> {
        &self.live
    }
}

/// Counters and ledger travel together through every construction.
#[derive(Clone, Debug, Default)]
pub struct Instruments {
    pub counters: Counters,
    pub ledger: SpaceLedger,
}

impl Instruments {
    pub fn new() -> Self {
        Self::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_tracks_peaks_per_phase() {
        let mut l = SpaceLedger::new();
        l.hold("text", 100);
        l.begin_phase("one");
        l.hold("a", 50);
        l.hold("a", 70);
        l.release("a");
        l.end_phase();
        l.begin_phase("two");
        l.hold("b", 10);
        assert_eq!(l.phase_peak("one"), Some(170));
        assert_eq!(l.phase_peak("two"), Some(110));
        assert_eq!(l.peak(), 170);
        assert_eq!(l.current(), 110);
        assert_eq!(l.phase_breakdown("one").unwrap()["a"], 70);
    }
}
