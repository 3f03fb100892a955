use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemplateId {
    PretrainGen,
    SftSelect,
    SftOptimize,
    ChainedInstruct,
    AiJudge,
    /// Best/worst vote over candidate responses for preference data.
    PrefVote,
}

impl TemplateId {
    pub const ALL: [TemplateId; 6] = [
        TemplateId::PretrainGen,
        TemplateId::SftSelect,
        TemplateId::SftOptimize,
        TemplateId::ChainedInstruct,
        TemplateId::AiJudge,
        TemplateId::PrefVote,
    ];

    pub fn body(self) -> &'static str {
        match self {
            TemplateId::PretrainGen => PRETRAIN_GEN,
            TemplateId::SftSelect => SFT_SELECT,
            TemplateId::SftOptimize => SFT_OPTIMIZE,
            TemplateId::ChainedInstruct => CHAINED_INSTRUCT,
            TemplateId::AiJudge => AI_JUDGE,
            TemplateId::PrefVote => PREF_VOTE,
        }
    }

    /// Slot names in order of first appearance.
    pub fn required_slots(self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for piece in split_body(self.body()) {
            if let Piece::Slot(name) = piece {
                if !out.contains(&name) {
                    out.push(name);
                }
            }
        }
        out
    }
}

enum Piece<'a> {
    Text(&'a str),
    Slot(&'a str),
}

fn split_body(body: &str) -> Vec<Piece<'_>> {
    let mut out = Vec::new();
    let mut rest = body;
    while let Some(start) = rest.find("{{") {
        let Some(len) = rest[start + 2..].find("}}") else { break };
        out.push(Piece::Text(&rest[..start]));
        out.push(Piece::Slot(&rest[start + 2..start + 2 + len]));
        rest = &rest[start + 2 + len + 2..];
    }
    out.push(Piece::Text(rest));
    out
}

/// Renders a template. Slot values are inserted verbatim and never rescanned,
/// so a value containing `{{...}}` cannot trigger further substitution.
pub fn render(id: TemplateId, slots: &BTreeMap<String, String>) -> Result<String> {
    let pieces = split_body(id.body());
    for p in &pieces {
        if let Piece::Slot(name) = p {
            if !slots.contains_key(*name) {
                return Err(Error::MissingSlot((*name).to_string()));
            }
        }
    }
    let mut out = String::new();
    for p in pieces {
        match p {
            Piece::Text(t) => out.push_str(t),
            Piece::Slot(name) => out.push_str(&slots[name]),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainMode {
    /// Examples linked by bridging instructions (progressive refinement).
    #[default]
    Chained,
    /// Plain few-shot: examples back to back, one instruction at the end.
    PlainFewshot,
}

pub const BRIDGE_FIRST: &str =
    "Please refer to the aforementioned example to generate relevant instruction for the following question.";
pub const BRIDGE_MIDDLE: &str =
    "Please refer to the previous instruction generation process to generate a relevant instruction for the following question.";
pub const BRIDGE_LAST: &str =
    "Please refer to the previous chain-of-thought examples to generate a relevant instruction for the following question.";
pub const BRIDGE_PLAIN: &str =
    "Please refer to the aforementioned examples to generate a relevant instruction for the following question.";

const CHAIN_HEADER: &str = "As an expert with a professional medical background.

Your task is to generate the corresponding instruction for the given question, based on the provided examples. Please note that the examples we provide are chain-of-thought examples, representing a progressive optimization process—that is, the later examples produce higher-quality instructions than the earlier ones. You should study this optimization process and apply it to generate a better instruction for the given question.

*Chain-of-thought examples:*

";

/// Renders a chained-example prompt for any chain length ≥ 1.
///
/// In chained mode example i is followed by a bridging line: the first one
/// after example 1, the middle one after inner examples, the last one after
/// the final example. For three examples this is exactly
/// [`TemplateId::ChainedInstruct`]. Plain mode keeps everything else and only
/// swaps the bridging lines for a single closing instruction.
pub fn render_chain(examples: &[String], question: &str, mode: ChainMode) -> Result<String> {
    if examples.is_empty() {
        return Err(Error::invalid("chained prompt needs at least one example"));
    }
    let n = examples.len();
    let mut out = String::from(CHAIN_HEADER);
    for (i, ex) in examples.iter().enumerate() {
        out.push_str(&format!("Example {}:\n{}\n\n", i + 1, ex));
        let bridge = match mode {
            ChainMode::Chained if i + 1 == n => Some(BRIDGE_LAST),
            ChainMode::Chained if i == 0 => Some(BRIDGE_FIRST),
            ChainMode::Chained => Some(BRIDGE_MIDDLE),
            ChainMode::PlainFewshot if i + 1 == n => Some(BRIDGE_PLAIN),
            ChainMode::PlainFewshot => None,
        };
        if let Some(b) = bridge {
            out.push_str(b);
            out.push_str("\n\n");
        }
    }
    out.push_str("Question:\n");
    out.push_str(question);
    Ok(out)
}

const PRETRAIN_GEN: &str = "As an expert with a professional medical background, your task is to compile high-quality content for medical textbooks.

The compilation must meet the following requirements:

Professionalism:
• Provide scientific and accurate medical knowledge.
• Clearly and concisely explain complex medical concepts.

Safety:
• Avoid creating content that could cause harm or lead to ambiguity.
• Adhere to medical ethical standards to ensure compliance.

Fluency:
• Ensure semantic coherence, with no logical errors or irrelevant information.
• Use language that is easy to understand to enhance readability.

Examples of Medical Textbook Content:

Example 1:
{{example_1}}

Example 2:
{{example_2}}

Example 3:
{{example_3}}

Output Format Requirements:

Your output must strictly follow the format below:

Compiled Medical Textbook Content:
(The compiled contents for the medical textbooks are displayed here.)";

// Shared by selection and optimization.
macro_rules! sft_criteria {
    () => {
        "Professionalism:
• Accurately understand patients' questions and provide relevant answers.
• Clearly and concisely explain complex medical knowledge.
• Proactively inquired about relevant patient information when necessary.

Safety:
• Provide scientific and accurate medical knowledge.
• Honestly acknowledge when lacking knowledge about certain topics.
• Ensure patient safety by refusing to offer information or advice that may cause harm.
• Adhere to medical ethics and respect patients' choices.

Fluency:
• Ensure semantic coherence, with no logical errors or irrelevant information.
• Use language that is easy to understand to enhance readability.
• Sustain a friendly and enthusiastic attitude in responses."
    };
}

const SFT_SELECT: &str = concat!(
    "As an evaluator with a professional medical background, please score the following medical data, which consists of a question and an answer from patient dialogues.

Question:
{{question}}

Answer:
{{answer}}

The scoring criteria should be prioritized in the following order: Professionalism, Safety, and Fluency. The specific definitions are as follows:

Scoring Criteria:

",
    sft_criteria!(),
    "

Note:
Scoring must be based on the importance hierarchy of Professionalism > Safety > Fluency. In cases of conflict, prioritize the former.
Please provide a score from 1 to 10 based on the overall assessment.
If the data has deficiencies, apply strict deductions to widen the score range as much as possible.

Your output must strictly follow the format below:

Score Result:
This section should contain only the score.

Reason:
This section should contain only your reasoning."
);

const SFT_OPTIMIZE: &str = concat!(
    "As an optimization assistant for medical text data, your task is to evaluate and optimize the following medical question-and-answer data.

Data:
{{data}}

The criteria should be prioritized in the following order: Professionalism, Safety, and Fluency. The specific definitions are as follows:

Criteria:

",
    sft_criteria!(),
    "

Note:
Firstly, you need to determine whether the given data exhibits issues as outlined in the Criteria. If no such issues are present, optimization is not required; otherwise, optimization is necessary. Should optimization be required, please proceed to optimize the provided data. The optimized data must not only meet the requirements specified in the Criteria but also satisfy the following two conditions:
• Ensure that the core intent of the original input remains unchanged.
• Maintain the length within a reasonable range (±30%).

Your output must strictly follow the format below:

Data Requires Optimization:
yes/no

Optimized Data:
If optimization is needed, output the optimized data here; otherwise, output null.

Reason:
This section should contain only your reasoning."
);

const CHAINED_INSTRUCT: &str = "As an expert with a professional medical background.

Your task is to generate the corresponding instruction for the given question, based on the provided examples. Please note that the examples we provide are chain-of-thought examples, representing a progressive optimization process—that is, the later examples produce higher-quality instructions than the earlier ones. You should study this optimization process and apply it to generate a better instruction for the given question.

*Chain-of-thought examples:*

Example 1:
{{example_1}}

Please refer to the aforementioned example to generate relevant instruction for the following question.

Example 2:
{{example_2}}

Please refer to the previous instruction generation process to generate a relevant instruction for the following question.

Example 3:
{{example_3}}

Please refer to the previous chain-of-thought examples to generate a relevant instruction for the following question.

Question:
{{question}}";

const AI_JUDGE: &str = "As a medical professional evaluator, please evaluate the following two doctors' responses to the same medical question.

Question:
{{question}}

Response 1:
{{response_1}}

Response 2:
{{response_2}}

The evaluation criteria are prioritized in the following order: Accuracy of the doctor's response, Safety, Fluency, and Conciseness. The specific definitions are as follows:

Evaluation Criteria:

1. Accuracy of the Doctor's Response: The doctor should accurately understand the patient's question and provide a scientific and accurate answer.

2. Safety: The doctor must adhere to laws, regulations, ethics, and professional standards when answering.

3. Fluency: Ensure semantic coherence with no logical errors or irrelevant information. Maintain a friendly and warm tone.

4. Conciseness: Clearly and concisely explain complex medical concepts. Avoid unnecessary redundancy in the dialogue.

Note:

The importance of the evaluation criteria is ordered as Accuracy > Safety > Fluency > Conciseness. In case of conflicts, the higher-priority criterion takes precedence.

Your output must strictly follow the format below:

Evaluation Result:

Based on the above criteria, judge the result of \u{201c}Response 1\u{201d} relative to \u{201c}Response 2\u{201d}. Output as: Win, Lose, or Tie.

Reason: (only reasons for rating can be answered here).";

const PREF_VOTE: &str = "As an evaluator with a professional medical background, please compare the following candidate responses to the same medical question and pick the best and the worst one.

Question:
{{question}}

{{responses}}

The evaluation criteria are prioritized in the following order: Professionalism, Safety, and Fluency.

Your output must strictly follow the format below:

Best Response:
(only the number of the best response)

Worst Response:
(only the number of the worst response)

Reason:
(only your reasoning)";
