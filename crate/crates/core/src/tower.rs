//! Tower model: disks with two colored faces, three posts, and the rules that
//! govern a single lift-flip-land move.
//!
//! Disks are numbered by size, `1` being the largest. A move lifts the top
//! disk of one post, turns it over and lands it on another post. Landing is
//! constrained by
//!
//! - the size rule: never land on a smaller disk;
//! - the magnet rule: the face that lands must differ in color from the face
//!   it touches;
//! - permanent post colors (colored and semi-free towers): a disk landing on a
//!   permanently colored post must show that color, even on an empty post.
//!
//! Because every landing is checked against the face below, all disks on one
//! post always show the same color. [`TowerState::validate`] checks that
//! invariant together with the structural ones.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Color of one face of a disk.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiskColor {
    Red,
    Blue,
}

impl DiskColor {
    pub fn opposite(self) -> DiskColor {
        match self {
            DiskColor::Red => DiskColor::Blue,
            DiskColor::Blue => DiskColor::Red,
        }
    }

    fn letter(self) -> char {
        match self {
            DiskColor::Red => 'r',
            DiskColor::Blue => 'b',
        }
    }
}

impl fmt::Display for DiskColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiskColor::Red => "Red",
            DiskColor::Blue => "Blue",
        })
    }
}

/// Color a post presents: its permanent color, the up face of its top disk,
/// or `Neutral` when it is empty and unpainted.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PostColor {
    Red,
    Blue,
    Neutral,
}

impl PostColor {
    /// Numeric encoding used by color records: Red 1, Neutral 0, Blue -1.
    pub fn value(self) -> i8 {
        match self {
            PostColor::Red => 1,
            PostColor::Neutral => 0,
            PostColor::Blue => -1,
        }
    }

    pub fn from_value(value: i8) -> Option<PostColor> {
        match value {
            1 => Some(PostColor::Red),
            0 => Some(PostColor::Neutral),
            -1 => Some(PostColor::Blue),
            _ => None,
        }
    }
}

impl From<DiskColor> for PostColor {
    fn from(c: DiskColor) -> Self {
        match c {
            DiskColor::Red => PostColor::Red,
            DiskColor::Blue => PostColor::Blue,
        }
    }
}

impl fmt::Display for PostColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PostColor::Red => "Red",
            PostColor::Blue => "Blue",
            PostColor::Neutral => "Neutral",
        })
    }
}

/// Source, Intermediate and Destination posts. The derived order is the
/// canonical post order used when enumerating moves.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PostId {
    S,
    I,
    D,
}

impl PostId {
    pub const ALL: [PostId; 3] = [PostId::S, PostId::I, PostId::D];

    pub fn index(self) -> usize {
        match self {
            PostId::S => 0,
            PostId::I => 1,
            PostId::D => 2,
        }
    }

    pub fn from_index(index: usize) -> Option<PostId> {
        PostId::ALL.get(index).copied()
    }
}

impl fmt::Display for PostId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PostId::S => "S",
            PostId::I => "I",
            PostId::D => "D",
        })
    }
}

impl FromStr for PostId {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" | "s" => Ok(PostId::S),
            "I" | "i" => Ok(PostId::I),
            "D" | "d" => Ok(PostId::D),
            other => Err(ParseError(format!("unknown post `{other}`"))),
        }
    }
}

/// Disk number; 1 is the largest disk, `n` the smallest.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiskId(pub u32);

impl DiskId {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for DiskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Disk {
    pub id: DiskId,
    /// Face currently pointing up. The down face is always the opposite.
    pub up: DiskColor,
}

impl Disk {
    pub fn down(&self) -> DiskColor {
        self.up.opposite()
    }
}

/// Permanent colors of the three posts of a colored tower.
///
/// The three colors may not all be equal, so the multiset is either
/// Red-Blue-Blue or Red-Red-Blue up to the order of the posts.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorAssignment {
    source: DiskColor,
    intermediate: DiskColor,
    destination: DiskColor,
}

impl ColorAssignment {
    /// S Red, I Blue, D Blue.
    pub const RED_BLUE_BLUE: ColorAssignment = ColorAssignment {
        source: DiskColor::Red,
        intermediate: DiskColor::Blue,
        destination: DiskColor::Blue,
    };
    /// S Red, I Red, D Blue.
    pub const RED_RED_BLUE: ColorAssignment = ColorAssignment {
        source: DiskColor::Red,
        intermediate: DiskColor::Red,
        destination: DiskColor::Blue,
    };

    pub fn new(
        source: DiskColor,
        intermediate: DiskColor,
        destination: DiskColor,
    ) -> Result<Self, StateError> {
        if source == intermediate && intermediate == destination {
            return Err(StateError::MonochromeAssignment);
        }
        Ok(ColorAssignment {
            source,
            intermediate,
            destination,
        })
    }

    pub fn color_of(&self, post: PostId) -> DiskColor {
        match post {
            PostId::S => self.source,
            PostId::I => self.intermediate,
            PostId::D => self.destination,
        }
    }
}

/// Which tower the rules apply to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Lucas' original puzzle: size rule only, disks are never turned over.
    Classical,
    /// Magnetic tower with all posts free (dynamically colored).
    Free,
    /// Every post permanently colored.
    Colored(ColorAssignment),
    /// S permanently `source`, D permanently the opposite color, I free.
    SemiFree { source: DiskColor },
}

impl Variant {
    pub fn colored_rbb() -> Variant {
        Variant::Colored(ColorAssignment::RED_BLUE_BLUE)
    }

    pub fn colored_rrb() -> Variant {
        Variant::Colored(ColorAssignment::RED_RED_BLUE)
    }

    pub fn semi_free() -> Variant {
        Variant::SemiFree {
            source: DiskColor::Red,
        }
    }

    pub fn permanent_color(&self, post: PostId) -> Option<DiskColor> {
        match self {
            Variant::Classical | Variant::Free => None,
            Variant::Colored(a) => Some(a.color_of(post)),
            Variant::SemiFree { source } => match post {
                PostId::S => Some(*source),
                PostId::I => None,
                PostId::D => Some(source.opposite()),
            },
        }
    }

    /// Whether moves turn disks over and the magnet rule applies.
    pub fn is_magnetic(&self) -> bool {
        !matches!(self, Variant::Classical)
    }

    /// Face shown by the stack in the start setting.
    pub fn start_color(&self) -> DiskColor {
        match self {
            Variant::SemiFree { source } => *source,
            _ => DiskColor::Red,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Classical => f.write_str("classical"),
            Variant::Free => f.write_str("free"),
            Variant::Colored(a) => write!(
                f,
                "colored-{}{}{}",
                a.source.letter(),
                a.intermediate.letter(),
                a.destination.letter()
            ),
            Variant::SemiFree {
                source: DiskColor::Red,
            } => f.write_str("semifree"),
            Variant::SemiFree {
                source: DiskColor::Blue,
            } => f.write_str("semifree-blue"),
        }
    }
}

impl FromStr for Variant {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letter = |c: char| match c {
            'r' => Ok(DiskColor::Red),
            'b' => Ok(DiskColor::Blue),
            _ => Err(ParseError(format!("bad color letter `{c}` in `{s}`"))),
        };
        match s {
            "classical" => Ok(Variant::Classical),
            "free" => Ok(Variant::Free),
            "semifree" | "semifree-red" => Ok(Variant::semi_free()),
            "semifree-blue" => Ok(Variant::SemiFree {
                source: DiskColor::Blue,
            }),
            _ => {
                let colors = s
                    .strip_prefix("colored-")
                    .ok_or_else(|| ParseError(format!("unknown variant `{s}`")))?;
                let letters: Vec<char> = colors.chars().collect();
                if letters.len() != 3 {
                    return Err(ParseError(format!("unknown variant `{s}`")));
                }
                let a = ColorAssignment::new(
                    letter(letters[0])?,
                    letter(letters[1])?,
                    letter(letters[2])?,
                )
                .map_err(|e| ParseError(format!("{s}: {e}")))?;
                Ok(Variant::Colored(a))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct ParseError(pub String);

/// One lift-flip-land action.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub disk: DiskId,
    pub from: PostId,
    pub to: PostId,
}

impl Move {
    pub fn new(disk: u32, from: PostId, to: PostId) -> Move {
        Move {
            disk: DiskId(disk),
            from,
            to,
        }
    }

    pub fn reversed(&self) -> Move {
        Move {
            disk: self.disk,
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}->{}", self.disk, self.from, self.to)
    }
}

/// The rule a rejected move breaks.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Error, Serialize)]
pub enum RuleViolation {
    #[error("source and target post are the same")]
    SamePost,
    #[error("disk is not the topmost disk of its post")]
    NotTop,
    #[error("size rule: disk would land on a smaller disk")]
    Size,
    #[error("magnet rule: landing face has the same color as the resident face")]
    Magnet,
    #[error("post is permanently colored with the other color")]
    PermanentColor,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("a tower needs at least one disk")]
    ZeroDisks,
    #[error("colored tower must paint the source post Red to match the start setting")]
    SourceNotRed,
    #[error("all three posts painted the same color")]
    MonochromeAssignment,
    #[error("disk {0} is missing")]
    MissingDisk(u32),
    #[error("disk {0} appears more than once or is out of range")]
    BadDisk(u32),
    #[error("post {0}: disks are not in descending size order")]
    SizeOrder(PostId),
    #[error("post {0}: disks show different colors")]
    MixedColors(PostId),
    #[error("post {0}: disk shows the wrong color for a permanently colored post")]
    PermanentColor(PostId),
    #[error("classical disks are never turned over")]
    FlippedClassicalDisk,
}

/// Full puzzle configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TowerState {
    n: u32,
    variant: Variant,
    posts: [Vec<Disk>; 3],
}

/// All `n` disks on S, largest at the bottom, showing the variant's start
/// color (Red except for a Blue-sourced semi-free tower).
pub fn initial_state(n: u32, variant: Variant) -> Result<TowerState, StateError> {
    TowerState::initial(n, variant)
}

impl TowerState {
    pub fn initial(n: u32, variant: Variant) -> Result<TowerState, StateError> {
        if n == 0 {
            return Err(StateError::ZeroDisks);
        }
        if let Variant::Colored(a) = variant {
            if a.color_of(PostId::S) != DiskColor::Red {
                return Err(StateError::SourceNotRed);
            }
        }
        let up = variant.start_color();
        let stack = (1..=n).map(|id| Disk { id: DiskId(id), up }).collect();
        Ok(TowerState {
            n,
            variant,
            posts: [stack, Vec::new(), Vec::new()],
        })
    }

    /// Builds a state from explicit stacks (bottom to top) and checks every
    /// invariant.
    pub fn from_posts(
        n: u32,
        variant: Variant,
        posts: [Vec<Disk>; 3],
    ) -> Result<TowerState, StateError> {
        let state = TowerState { n, variant, posts };
        state.validate()?;
        Ok(state)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    pub fn post(&self, post: PostId) -> &[Disk] {
        &self.posts[post.index()]
    }

    pub fn top(&self, post: PostId) -> Option<&Disk> {
        self.posts[post.index()].last()
    }

    /// Post currently holding `disk`.
    pub fn locate(&self, disk: DiskId) -> Option<PostId> {
        PostId::ALL
            .into_iter()
            .find(|p| self.post(*p).iter().any(|d| d.id == disk))
    }

    /// Permanent color if the post has one, else the up face of its top disk,
    /// else `Neutral`.
    pub fn effective_color(&self, post: PostId) -> PostColor {
        if let Some(c) = self.variant.permanent_color(post) {
            return c.into();
        }
        self.top(post)
            .map(|d| d.up.into())
            .unwrap_or(PostColor::Neutral)
    }

    pub fn colors(&self) -> [PostColor; 3] {
        PostId::ALL.map(|p| self.effective_color(p))
    }

    pub fn check_move(&self, mv: &Move) -> Result<(), RuleViolation> {
        if mv.from == mv.to {
            return Err(RuleViolation::SamePost);
        }
        let disk = match self.top(mv.from) {
            Some(d) if d.id == mv.disk => *d,
            _ => return Err(RuleViolation::NotTop),
        };
        if !self.variant.is_magnetic() {
            return match self.top(mv.to) {
                Some(resident) if resident.id > disk.id => Err(RuleViolation::Size),
                _ => Ok(()),
            };
        }
        // After the flip the old up face is the one that touches down.
        let landing_up = disk.up.opposite();
        if let Some(resident) = self.top(mv.to) {
            if resident.id > disk.id {
                return Err(RuleViolation::Size);
            }
            if disk.up == resident.up {
                return Err(RuleViolation::Magnet);
            }
        }
        if let Some(c) = self.variant.permanent_color(mv.to) {
            if c != landing_up {
                return Err(RuleViolation::PermanentColor);
            }
        }
        Ok(())
    }

    pub fn is_legal(&self, mv: &Move) -> bool {
        self.check_move(mv).is_ok()
    }

    /// Applies a move in place. On error the state is left untouched.
    pub fn apply_mut(&mut self, mv: &Move) -> Result<(), RuleViolation> {
        self.check_move(mv)?;
        let mut disk = self.posts[mv.from.index()]
            .pop()
            .expect("checked: source post is non-empty");
        if self.variant.is_magnetic() {
            disk.up = disk.up.opposite();
        }
        self.posts[mv.to.index()].push(disk);
        Ok(())
    }

    pub fn apply(&self, mv: &Move) -> Result<TowerState, RuleViolation> {
        let mut next = self.clone();
        next.apply_mut(mv)?;
        Ok(next)
    }

    /// Every legal move, ordered by disk id, then source post, then target
    /// post.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves: Vec<Move> = PostId::ALL
            .into_iter()
            .filter_map(|from| self.top(from).map(|d| (d.id, from)))
            .flat_map(|(disk, from)| {
                PostId::ALL
                    .into_iter()
                    .map(move |to| Move { disk, from, to })
            })
            .filter(|mv| self.is_legal(mv))
            .collect();
        moves.sort();
        moves
    }

    /// All disks on D. Orientation is not constrained.
    pub fn is_solved(&self) -> bool {
        self.post(PostId::D).len() == self.n as usize
    }

    /// All disks on post `post`.
    pub fn is_stacked_on(&self, post: PostId) -> bool {
        self.post(post).len() == self.n as usize
    }

    pub fn validate(&self) -> Result<(), StateError> {
        if self.n == 0 {
            return Err(StateError::ZeroDisks);
        }
        let mut seen = vec![false; self.n as usize];
        for post in PostId::ALL {
            let stack = self.post(post);
            for disk in stack {
                let id = disk.id.0;
                if id == 0 || id > self.n || seen[(id - 1) as usize] {
                    return Err(StateError::BadDisk(id));
                }
                seen[(id - 1) as usize] = true;
                if !self.variant.is_magnetic() && disk.up != DiskColor::Red {
                    return Err(StateError::FlippedClassicalDisk);
                }
            }
            if stack.windows(2).any(|w| w[0].id >= w[1].id) {
                return Err(StateError::SizeOrder(post));
            }
            if stack.windows(2).any(|w| w[0].up != w[1].up) {
                return Err(StateError::MixedColors(post));
            }
            if let (Some(c), Some(top)) = (self.variant.permanent_color(post), stack.last()) {
                if top.up != c {
                    return Err(StateError::PermanentColor(post));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(StateError::MissingDisk(missing as u32 + 1));
        }
        Ok(())
    }
}

impl fmt::Display for TowerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, post) in PostId::ALL.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{post}:")?;
            for d in self.post(post) {
                let face = match d.up {
                    DiskColor::Red => 'r',
                    DiskColor::Blue => 'b',
                };
                write!(f, " {}{}", d.id, face)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("move #{index} ({mv}) is illegal: {violation}")]
pub struct IllegalMove {
    /// 1-based position of the move within the sequence.
    pub index: usize,
    pub mv: Move,
    pub violation: RuleViolation,
}

/// A legal move sequence together with the post colors seen after each move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    start: TowerState,
    end: TowerState,
    moves: Vec<Move>,
    colors: Vec<[PostColor; 3]>,
}

impl Trace {
    /// Replays `moves` from `start`, rejecting the first illegal one.
    pub fn replay(start: TowerState, moves: Vec<Move>) -> Result<Trace, IllegalMove> {
        let mut state = start.clone();
        let mut colors = Vec::with_capacity(moves.len() + 1);
        colors.push(state.colors());
        for (i, mv) in moves.iter().enumerate() {
            state.apply_mut(mv).map_err(|violation| IllegalMove {
                index: i + 1,
                mv: *mv,
                violation,
            })?;
            colors.push(state.colors());
        }
        Ok(Trace {
            start,
            end: state,
            moves,
            colors,
        })
    }

    pub fn start(&self) -> &TowerState {
        &self.start
    }

    pub fn end(&self) -> &TowerState {
        &self.end
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// `len() + 1` entries; entry `j` holds the colors after `j` moves.
    pub fn colors(&self) -> &[[PostColor; 3]] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Number of moves made by each disk; index `k - 1` holds disk `k`.
    pub fn per_disk_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.start.n as usize];
        for mv in &self.moves {
            counts[(mv.disk.0 - 1) as usize] += 1;
        }
        counts
    }

    /// Every state along the trace, start included.
    pub fn states(&self) -> impl Iterator<Item = TowerState> + '_ {
        let mut state = self.start.clone();
        std::iter::once(state.clone()).chain(self.moves.iter().map(move |mv| {
            state
                .apply_mut(mv)
                .expect("trace moves were checked on construction");
            state.clone()
        }))
    }
}
