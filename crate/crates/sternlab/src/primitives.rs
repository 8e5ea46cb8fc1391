//! Hash-derived primitives: deterministic, randomized, and salted+indexed
//! commitments, the seed expansions that turn one short seed into
//! permutations and vectors, and the depth-2 seed / commitment trees used by
//! the fused four-round variant.
//!
//! Every derived function is a SHAKE256 call with a distinct one-byte domain
//! tag. The bit-exact layout is
//!
//! ```text
//! digest = SHAKE256(tag : 1 byte || payload || salt : l_salt/8 bytes || index : 4 bytes LE)
//! ```
//!
//! truncated to the declared output length. Unsalted variants omit the salt
//! and index fields entirely. Output lengths that are not a multiple of
//! eight bits occupy `ceil(l/8)` bytes with the unused high bits of the last
//! byte cleared, so a length-`l` seed takes exactly `2^l` values.

use rand::Rng;
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use crate::algebra::{FieldVector, Permutation};
use crate::error::Error;

/// Domain-separation tags, one per derived function.
pub mod tag {
    /// Payload commitment.
    pub const COMMIT: u8 = 0x01;
    /// Master-seed split into (permutation seed, vector seed).
    pub const EXPAND_SPLIT: u8 = 0x02;
    /// Seed to permutation.
    pub const EXPAND_PERM: u8 = 0x03;
    /// Seed to field vector.
    pub const EXPAND_VECTOR: u8 = 0x04;
    /// Seed-tree node expansion.
    pub const TREE_SEED: u8 = 0x05;
    /// Commitment-tree node hash.
    pub const TREE_NODE: u8 = 0x06;
    /// Challenge derivation for the non-interactive transform.
    pub const FS_CHALLENGE: u8 = 0x07;
    /// Global commitment over all per-round commitments.
    pub const GLOBAL_COMMIT: u8 = 0x08;
}

/// Optional `(salt, index)` binding threaded through a salted call.
pub type Binding<'a> = Option<(&'a [u8], u32)>;

/// Fixed-length digest of a commitment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Commitment(Vec<u8>);

impl Commitment {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Commitment(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Per-signature salt plus the monotone call counter.
///
/// Single-owner mutable state: the protocol scheduler owns the increment
/// order, and the counter advances by exactly one per salted call. The
/// frozen mode is an experiment hook that pins the counter, deliberately
/// re-creating the collision structure the counter exists to prevent.
#[derive(Debug, Clone)]
pub struct SaltContext {
    salt: Vec<u8>,
    index: u32,
    frozen: bool,
}

impl SaltContext {
    pub fn new(salt: Vec<u8>) -> Self {
        SaltContext {
            salt,
            index: 0,
            frozen: false,
        }
    }

    /// Experiment hook: the counter stays at `index` forever.
    pub fn frozen(salt: Vec<u8>, index: u32) -> Self {
        SaltContext {
            salt,
            index,
            frozen: true,
        }
    }

    pub fn salt(&self) -> &[u8] {
        &self.salt
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Returns the index for the next salted call and advances the counter.
    pub fn next(&mut self) -> Result<u32, Error> {
        let current = self.index;
        if !self.frozen {
            self.index = self.index.checked_add(1).ok_or(Error::IndexOverflow)?;
        }
        Ok(current)
    }

    /// Binding view `(salt, next index)` for one salted call.
    pub fn bind(&mut self) -> Result<(Vec<u8>, u32), Error> {
        let index = self.next()?;
        Ok((self.salt.clone(), index))
    }
}

/// Streaming reader over one domain-separated SHAKE256 invocation.
pub struct XofStream {
    reader: sha3::Shake256Reader,
}

impl XofStream {
    pub fn next_byte(&mut self) -> u8 {
        let mut b = [0u8; 1];
        self.reader.read(&mut b);
        b[0]
    }

    pub fn fill(&mut self, buf: &mut [u8]) {
        self.reader.read(buf);
    }

    /// Uniform draw from `[0, m)` by rejection sampling, `m <= 65536`.
    pub fn uniform_index(&mut self, m: usize) -> usize {
        debug_assert!(m >= 1 && m <= 1 << 16);
        if m == 1 {
            return 0;
        }
        if m <= 256 {
            let threshold = 256 - 256 % m;
            loop {
                let b = self.next_byte() as usize;
                if b < threshold {
                    return b % m;
                }
            }
        } else {
            let threshold = 65536 - 65536 % m;
            loop {
                let v = ((self.next_byte() as usize) << 8) | self.next_byte() as usize;
                if v < threshold {
                    return v % m;
                }
            }
        }
    }
}

/// The crate's hash suite: one extendable-output function plus the three
/// output lengths, in bits. Stateless and freely shareable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashSuite {
    /// Seed length in bits; need not be a multiple of 8.
    pub l_seed: usize,
    /// Commitment length in bits; multiple of 8.
    pub l_comm: usize,
    /// Salt length in bits; multiple of 8.
    pub l_salt: usize,
}

/// Bytes needed to hold `bits` bits.
pub fn byte_len(bits: usize) -> usize {
    bits.div_ceil(8)
}

/// Clears the unused high bits of the last byte so the value carries
/// exactly `bits` bits.
fn mask_to_bits(bytes: &mut [u8], bits: usize) {
    let rem = bits % 8;
    if rem != 0 {
        if let Some(last) = bytes.last_mut() {
            *last &= (1u8 << rem) - 1;
        }
    }
}

impl HashSuite {
    pub fn new(l_seed: usize, l_comm: usize, l_salt: usize) -> Result<Self, Error> {
        if l_seed == 0 || l_comm == 0 {
            return Err(Error::InvalidParameters(
                "output lengths must be positive".into(),
            ));
        }
        if l_comm % 8 != 0 || l_salt % 8 != 0 {
            return Err(Error::InvalidParameters(
                "commitment and salt lengths must be whole bytes".into(),
            ));
        }
        Ok(HashSuite {
            l_seed,
            l_comm,
            l_salt,
        })
    }

    pub fn seed_bytes(&self) -> usize {
        byte_len(self.l_seed)
    }

    pub fn comm_bytes(&self) -> usize {
        self.l_comm / 8
    }

    pub fn salt_bytes(&self) -> usize {
        self.l_salt / 8
    }

    /// Opens the domain-separated stream `SHAKE256(tag || parts... || binding)`.
    pub fn stream(&self, tag: u8, parts: &[&[u8]], binding: Binding) -> XofStream {
        let mut hasher = Shake256::default();
        hasher.update(&[tag]);
        for part in parts {
            hasher.update(part);
        }
        if let Some((salt, index)) = binding {
            hasher.update(salt);
            hasher.update(&index.to_le_bytes());
        }
        XofStream {
            reader: hasher.finalize_xof(),
        }
    }

    fn digest(&self, tag: u8, parts: &[&[u8]], binding: Binding, out_bits: usize) -> Vec<u8> {
        let mut out = vec![0u8; byte_len(out_bits)];
        self.stream(tag, parts, binding).fill(&mut out);
        mask_to_bits(&mut out, out_bits);
        out
    }

    /// Fresh uniformly random seed of `l_seed` bits.
    pub fn random_seed<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u8> {
        let mut seed = vec![0u8; self.seed_bytes()];
        rng.fill_bytes(&mut seed);
        mask_to_bits(&mut seed, self.l_seed);
        seed
    }

    /// Fresh uniformly random salt of `l_salt` bits.
    pub fn random_salt<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u8> {
        let mut salt = vec![0u8; self.salt_bytes()];
        rng.fill_bytes(&mut salt);
        salt
    }

    /// Deterministic (or, with a binding, salted+indexed) commitment.
    /// Verification is recomputation.
    pub fn commit(&self, payload: &[u8], binding: Binding) -> Commitment {
        Commitment(self.digest(tag::COMMIT, &[payload], binding, self.l_comm))
    }

    /// Randomized commitment: digest of `payload || rho` for a fresh
    /// `l_comm`-bit nonce `rho`, returned as the opening.
    pub fn commit_randomized<R: Rng + ?Sized>(
        &self,
        payload: &[u8],
        rng: &mut R,
    ) -> (Commitment, Vec<u8>) {
        let mut rho = vec![0u8; self.comm_bytes()];
        rng.fill_bytes(&mut rho);
        let c = Commitment(self.digest(tag::COMMIT, &[payload, &rho], None, self.l_comm));
        (c, rho)
    }

    /// Checks a randomized commitment against its opening.
    pub fn verify_randomized(&self, c: &Commitment, payload: &[u8], rho: &[u8]) -> bool {
        if rho.len() != self.comm_bytes() {
            return false;
        }
        Commitment(self.digest(tag::COMMIT, &[payload, rho], None, self.l_comm)) == *c
    }

    /// Global commitment over the concatenated per-round commitments.
    pub fn global_commit(&self, payload: &[u8], binding: Binding) -> Commitment {
        Commitment(self.digest(tag::GLOBAL_COMMIT, &[payload], binding, self.l_comm))
    }

    /// Seed split `E0`: one master seed to (permutation seed, vector seed).
    pub fn expand_seed_pair(&self, seed: &[u8], binding: Binding) -> (Vec<u8>, Vec<u8>) {
        self.split_seed(tag::EXPAND_SPLIT, seed, binding)
    }

    /// Seed-tree expansion `J`: parent seed to (left child, right child).
    pub fn tree_expand(&self, seed: &[u8], binding: Binding) -> (Vec<u8>, Vec<u8>) {
        self.split_seed(tag::TREE_SEED, seed, binding)
    }

    fn split_seed(&self, tag: u8, seed: &[u8], binding: Binding) -> (Vec<u8>, Vec<u8>) {
        let half = self.seed_bytes();
        let mut out = vec![0u8; 2 * half];
        self.stream(tag, &[seed], binding).fill(&mut out);
        let mut right = out.split_off(half);
        mask_to_bits(&mut out, self.l_seed);
        mask_to_bits(&mut right, self.l_seed);
        (out, right)
    }

    /// Seed expansion `E1`: Fisher-Yates shuffle of the identity driven by
    /// the XOF stream, with rejection sampling for unbiased index draws.
    pub fn expand_permutation(&self, seed: &[u8], binding: Binding, n: usize) -> Permutation {
        let mut stream = self.stream(tag::EXPAND_PERM, &[seed], binding);
        let mut mapping: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = stream.uniform_index(i + 1);
            mapping.swap(i, j);
        }
        Permutation::new(mapping).expect("shuffle of identity is a bijection")
    }

    /// Seed expansion `E2`: per-symbol rejection sampling from the XOF byte
    /// stream (accept byte `b` when `b < q * floor(256/q)`, reduce mod q).
    pub fn expand_vector(&self, seed: &[u8], binding: Binding, n: usize, q: u8) -> FieldVector {
        let mut stream = self.stream(tag::EXPAND_VECTOR, &[seed], binding);
        let threshold = 256 - 256 % u16::from(q);
        let entries: Vec<u8> = (0..n)
            .map(|_| loop {
                let b = stream.next_byte();
                if u16::from(b) < threshold {
                    break b % q;
                }
            })
            .collect();
        FieldVector::new(q, entries).expect("symbols reduced mod q")
    }

    /// Commitment-tree node hash `L`: digest of the two child digests.
    pub fn tree_node(&self, left: &Commitment, right: &Commitment, binding: Binding) -> Commitment {
        Commitment(self.digest(
            tag::TREE_NODE,
            &[left.as_bytes(), right.as_bytes()],
            binding,
            self.l_comm,
        ))
    }
}

/// A fully expanded depth-2 seed tree: one root, two internal nodes, four
/// leaves. Revealing an internal node lets a verifier recompute exactly its
/// leaf descendants and nothing else.
#[derive(Debug, Clone)]
pub struct SeedTree {
    pub root: Vec<u8>,
    /// `internal[0]` covers leaves 0,1; `internal[1]` covers leaves 2,3.
    pub internal: [Vec<u8>; 2],
    pub leaves: [Vec<u8>; 4],
}

/// Identifies a node of a depth-2 tree with four leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeNode {
    Root,
    /// Internal node covering leaves 0 and 1.
    Left,
    /// Internal node covering leaves 2 and 3.
    Right,
    Leaf(usize),
}

impl TreeNode {
    /// Leaves covered by this node.
    pub fn covers(self) -> &'static [usize] {
        match self {
            TreeNode::Root => &[0, 1, 2, 3],
            TreeNode::Left => &[0, 1],
            TreeNode::Right => &[2, 3],
            TreeNode::Leaf(0) => &[0],
            TreeNode::Leaf(1) => &[1],
            TreeNode::Leaf(2) => &[2],
            TreeNode::Leaf(3) => &[3],
            TreeNode::Leaf(_) => &[],
        }
    }
}

/// Minimal set of nodes whose leaf cover is exactly `leaves`: the root when
/// all four are present, otherwise per half either the internal node (both
/// leaves present) or the individual leaves.
pub fn subtree_cover(leaves: [bool; 4]) -> Vec<TreeNode> {
    if leaves == [true; 4] {
        return vec![TreeNode::Root];
    }
    let mut cover = Vec::new();
    for (half, node) in [((0, 1), TreeNode::Left), ((2, 3), TreeNode::Right)] {
        if leaves[half.0] && leaves[half.1] {
            cover.push(node);
        } else {
            if leaves[half.0] {
                cover.push(TreeNode::Leaf(half.0));
            }
            if leaves[half.1] {
                cover.push(TreeNode::Leaf(half.1));
            }
        }
    }
    cover
}

impl SeedTree {
    /// Expands a root seed with three `J` calls in fixed order: root, then
    /// the internal node over leaves 0,1, then the one over leaves 2,3.
    pub fn expand(
        suite: &HashSuite,
        root: Vec<u8>,
        ctx: &mut SaltContext,
    ) -> Result<SeedTree, Error> {
        let (salt, i0) = ctx.bind()?;
        let (n01, n23) = suite.tree_expand(&root, Some((&salt, i0)));
        let (_, i1) = ctx.bind()?;
        let (l0, l1) = suite.tree_expand(&n01, Some((&salt, i1)));
        let (_, i2) = ctx.bind()?;
        let (l2, l3) = suite.tree_expand(&n23, Some((&salt, i2)));
        Ok(SeedTree {
            root,
            internal: [n01, n23],
            leaves: [l0, l1, l2, l3],
        })
    }

    /// Value stored at a node.
    pub fn node(&self, id: TreeNode) -> &[u8] {
        match id {
            TreeNode::Root => &self.root,
            TreeNode::Left => &self.internal[0],
            TreeNode::Right => &self.internal[1],
            TreeNode::Leaf(i) => &self.leaves[i],
        }
    }

    /// Reveals the minimal cover of `leaves`, never exposing a node that
    /// covers an unrevealed leaf.
    pub fn reveal(&self, leaves: [bool; 4]) -> Vec<(TreeNode, Vec<u8>)> {
        subtree_cover(leaves)
            .into_iter()
            .map(|id| (id, self.node(id).to_vec()))
            .collect()
    }

    /// Verifier-side re-expansion: recomputes the leaves covered by the
    /// revealed nodes, given the salt and the tree's three `J`-call indices
    /// `(root, left, right)`. Leaves outside the cover stay `None`; there is
    /// no way to reach them from the revealed material.
    pub fn reconstruct_leaves(
        suite: &HashSuite,
        revealed: &[(TreeNode, Vec<u8>)],
        salt: &[u8],
        indices: (u32, u32, u32),
    ) -> [Option<Vec<u8>>; 4] {
        let mut leaves: [Option<Vec<u8>>; 4] = [None, None, None, None];
        for (id, value) in revealed {
            match id {
                TreeNode::Root => {
                    let (n01, n23) = suite.tree_expand(value, Some((salt, indices.0)));
                    let (l0, l1) = suite.tree_expand(&n01, Some((salt, indices.1)));
                    let (l2, l3) = suite.tree_expand(&n23, Some((salt, indices.2)));
                    leaves = [Some(l0), Some(l1), Some(l2), Some(l3)];
                }
                TreeNode::Left => {
                    let (l0, l1) = suite.tree_expand(value, Some((salt, indices.1)));
                    leaves[0] = Some(l0);
                    leaves[1] = Some(l1);
                }
                TreeNode::Right => {
                    let (l2, l3) = suite.tree_expand(value, Some((salt, indices.2)));
                    leaves[2] = Some(l2);
                    leaves[3] = Some(l3);
                }
                TreeNode::Leaf(i) => leaves[*i] = Some(value.clone()),
            }
        }
        leaves
    }
}
