//! Row-major indexing of the joint action space.
//!
//! A profile `(a_1, ..., a_n)` maps to a flat offset with player 1 the
//! slowest-varying coordinate. The flat offset and the profile round-trip
//! exactly, so tensors over the joint space can be stored as plain vectors.

/// A joint action profile, one action index per player.
pub type ActionProfile = Vec<usize>;

/// Immutable shape of a joint action space plus the stride table for
/// flattening and unflattening profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileSpace {
    counts: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl ProfileSpace {
    /// Build from per-player action counts. Panics if any count is zero.
    pub fn new(counts: &[usize]) -> Self {
        assert!(!counts.is_empty(), "a game needs at least one player");
        assert!(
            counts.iter().all(|&c| c > 0),
            "every player needs at least one action"
        );
        let mut strides = vec![1usize; counts.len()];
        for i in (0..counts.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * counts[i + 1];
        }
        let total = strides[0] * counts[0];
        ProfileSpace {
            counts: counts.to_vec(),
            strides,
            total,
        }
    }

    pub fn num_players(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Total number of joint profiles.
    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Flat offset of a profile. Panics on wrong arity or an out-of-range
    /// action; callers validate user input before reaching here.
    pub fn flatten(&self, profile: &[usize]) -> usize {
        assert_eq!(profile.len(), self.counts.len(), "profile arity mismatch");
        let mut flat = 0;
        for (i, &a) in profile.iter().enumerate() {
            assert!(a < self.counts[i], "action out of range");
            flat += a * self.strides[i];
        }
        flat
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn unflatten(&self, flat: usize) -> ActionProfile {
        assert!(flat < self.total, "flat index out of range");
        (0..self.counts.len()).map(|i| self.coord(flat, i)).collect()
    }

    /// Extract one player's action from a flat offset without materializing
    /// the whole profile.
    pub fn coord(&self, flat: usize, player: usize) -> usize {
        (flat / self.strides[player]) % self.counts[player]
    }

    /// Flat offset of the profile that agrees with `flat` everywhere except
    /// player `player`, who plays `action`.
    pub fn with_coord(&self, flat: usize, player: usize, action: usize) -> usize {
        assert!(action < self.counts[player], "action out of range");
        let stride = self.strides[player];
        flat - self.coord(flat, player) * stride + action * stride
    }

    /// Iterate all flat offsets in order.
    pub fn flats(&self) -> std::ops::Range<usize> {
        0..self.total
    }

    /// The space with one player's coordinate removed; used for tensors over
    /// everyone-but-one-player such as reduced potentials.
    pub fn without(&self, player: usize) -> ProfileSpace {
        assert!(player < self.counts.len());
        let counts: Vec<usize> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != player)
            .map(|(_, &c)| c)
            .collect();
        ProfileSpace::new(&counts)
    }

    /// Project a full-space flat offset into the subspace that omits
    /// `player`.
    pub fn project_without(&self, flat: usize, player: usize, sub: &ProfileSpace) -> usize {
        let mut profile = Vec::with_capacity(self.counts.len() - 1);
        for i in 0..self.counts.len() {
            if i != player {
                profile.push(self.coord(flat, i));
            }
        }
        sub.flatten(&profile)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn row_major_player_one_slowest() {
        let space = ProfileSpace::new(&[2, 3, 2]);
        assert_eq!(space.len(), 12);
        assert_eq!(space.flatten(&[0, 0, 0]), 0);
        assert_eq!(space.flatten(&[0, 0, 1]), 1);
        assert_eq!(space.flatten(&[0, 1, 0]), 2);
        assert_eq!(space.flatten(&[1, 0, 0]), 6);
        assert_eq!(space.unflatten(11), vec![1, 2, 1]);
    }

    #[test]
    fn with_coord_replaces_a_single_player() {
        let space = ProfileSpace::new(&[3, 2, 4]);
        let flat = space.flatten(&[2, 1, 3]);
        let moved = space.with_coord(flat, 0, 0);
        assert_eq!(space.unflatten(moved), vec![0, 1, 3]);
        assert_eq!(space.coord(moved, 0), 0);
        assert_eq!(space.coord(moved, 2), 3);
    }

    proptest! {
        #[test]
        fn flatten_unflatten_round_trip(
            counts in proptest::collection::vec(1usize..5, 1..5)
        ) {
            let space = ProfileSpace::new(&counts);
            for flat in space.flats() {
                let profile = space.unflatten(flat);
                prop_assert_eq!(space.flatten(&profile), flat);
            }
        }
    }
}
