//! Normalization and word/separator tokenization.
//!
//! The normalization rule: bytes are decoded as UTF-8 with lossy
//! replacement, ASCII letters are lowercased, and every other character
//! (digits, punctuation, apostrophes, non-ASCII) becomes one space.
//! Concatenating the tokens reproduces the normalized text exactly.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    /// Lowercase ASCII-alphabetic word.
    Word(String),
    /// Run of one or more spaces.
    Separator(String),
}

impl Token {
    pub fn text(&self) -> &str {
        match self {
            Token::Word(t) | Token::Separator(t) => t,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TokenStream {
    pub tokens: Vec<Token>,
}

impl TokenStream {
    /// The normalized document text.
    pub fn text(&self) -> String {
        self.tokens.iter().map(Token::text).collect()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().filter_map(|t| match t {
            Token::Word(w) => Some(w.as_str()),
            Token::Separator(_) => None,
        })
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }
}

pub fn normalize_and_tokenize(raw: &[u8]) -> TokenStream {
    let text = String::from_utf8_lossy(raw);
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut in_word = false;

    for c in text.chars() {
        let normalized = if c.is_ascii_alphabetic() {
            Some(c.to_ascii_lowercase())
        } else {
            Option::None
        };
        let word_char = normalized.is_some();
        if !current.is_empty() && word_char != in_word {
            tokens.push(if in_word {
                Token::Word(std::mem::take(&mut current))
            } else {
                Token::Separator(std::mem::take(&mut current))
            });
        }
        in_word = word_char;
        current.push(normalized.unwrap_or(' '));
    }
    if !current.is_empty() {
        tokens.push(if in_word {
            Token::Word(current)
        } else {
            Token::Separator(current)
        });
    }
    TokenStream { tokens }
}
