use serde::{Deserialize, Serialize};

/// Communication accounting for one execution.
///
/// `shuffles` counts rounds whose writes are grouped by key (the expensive
/// primitive of the MPC world), `bytes_shuffled` the serialized size of the
/// pairs written in those rounds, and `bytes_kv` the size of all answers
/// returned by key-value lookups. Counters are monotone over a run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub rounds: u64,
    pub shuffles: u64,
    pub total_queries: u64,
    pub total_writes: u64,
    pub max_machine_comm: u64,
    pub bytes_shuffled: u64,
    pub bytes_kv: u64,
}

impl RunMetrics {
    /// Difference `self - earlier`, used to report per-stage costs.
    pub fn delta(&self, earlier: &RunMetrics) -> RunMetrics {
        RunMetrics {
            rounds: self.rounds - earlier.rounds,
            shuffles: self.shuffles - earlier.shuffles,
            total_queries: self.total_queries - earlier.total_queries,
            total_writes: self.total_writes - earlier.total_writes,
            max_machine_comm: self.max_machine_comm.max(earlier.max_machine_comm),
            bytes_shuffled: self.bytes_shuffled - earlier.bytes_shuffled,
            bytes_kv: self.bytes_kv - earlier.bytes_kv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_names_are_fixed() {
        let m = RunMetrics {
            rounds: 1,
            shuffles: 2,
            total_queries: 3,
            total_writes: 4,
            max_machine_comm: 5,
            bytes_shuffled: 6,
            bytes_kv: 7,
        };
        let js = serde_json::to_value(&m).unwrap();
        for field in [
            "rounds",
            "shuffles",
            "total_queries",
            "total_writes",
            "max_machine_comm",
            "bytes_shuffled",
            "bytes_kv",
        ] {
            assert!(js.get(field).is_some(), "missing field {field}");
        }
    }
}
