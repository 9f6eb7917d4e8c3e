/**
 * Turn batch events into rectangular token matrices for training loops.
 * Padding is metadata-only: the per-sentence lengths are preserved, so
 * stripping pads reconstructs the original token sequences exactly.
 */

import type { BatchEvent, StreamEvent } from './events.js'

export interface TokenMatrix {
  /** Rows padded to the longest sentence in the batch. */
  tokens: string[][]
  /** Original length of each row before padding. */
  lengths: number[]
  /** Common row width (max length; 0 for an empty matrix). */
  width: number
  padToken: string
}

export interface PaddedBatch {
  batchId: number
  phase: number
  shard: number
  sampleIds: number[]
  src: TokenMatrix
  tgt: TokenMatrix
  wordCount: number
}

export function padSentences(sentences: string[][], padToken: string): TokenMatrix {
  const lengths = sentences.map((s) => s.length)
  const width = lengths.length === 0 ? 0 : Math.max(...lengths)
  const tokens = sentences.map((s) =>
    s.length === width ? [...s] : [...s, ...Array(width - s.length).fill(padToken)],
  )
  return { tokens, lengths, width, padToken }
}

export function stripPadding(matrix: TokenMatrix): string[][] {
  return matrix.tokens.map((row, i) => row.slice(0, matrix.lengths[i]))
}

export function padBatch(batch: BatchEvent, padToken: string): PaddedBatch {
  return {
    batchId: batch.batchId,
    phase: batch.phase,
    shard: batch.shard,
    sampleIds: [...batch.sampleIds],
    src: padSentences(batch.src, padToken),
    tgt: padSentences(batch.tgt, padToken),
    wordCount: batch.wordCount,
  }
}

/**
 * Filter an event stream down to its batches, padded side by side. Control
 * events pass through `onEvent` when given, so a consumer can hook
 * checkpoint/phase callbacks without a second pass over the stream.
 */
export async function* asTokenBatches(
  events: AsyncIterable<StreamEvent> | Iterable<StreamEvent>,
  padToken = '<pad>',
  onEvent?: (event: StreamEvent) => void,
): AsyncGenerator<PaddedBatch, void, undefined> {
  for await (const event of events) {
    onEvent?.(event)
    if (event.kind === 'batch') {
      yield padBatch(event, padToken)
    }
  }
}
