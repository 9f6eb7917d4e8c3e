import { describe, expect, it } from 'vitest'

import type { BatchEvent } from '../src/index.js'
import { asTokenBatches, padSentences, stripPadding } from '../src/index.js'

const PAD = '<pad>'

describe('padSentences', () => {
  it('pads rows to the batch max length and keeps lengths', () => {
    const matrix = padSentences([['a', 'b', 'c'], ['d', 'e', 'f', 'g', 'h']], PAD)
    expect(matrix.width).toBe(5)
    expect(matrix.tokens[0]).toEqual(['a', 'b', 'c', PAD, PAD])
    expect(matrix.tokens[1]).toEqual(['d', 'e', 'f', 'g', 'h'])
    expect(matrix.lengths).toEqual([3, 5])
  })

  it('adds no padding to a single-sentence batch', () => {
    const matrix = padSentences([['a', 'b']], PAD)
    expect(matrix.tokens).toEqual([['a', 'b']])
    expect(matrix.width).toBe(2)
  })

  it('round-trips losslessly through stripPadding', () => {
    const sentences = [['a'], ['b', 'c', 'd'], ['e', 'f']]
    expect(stripPadding(padSentences(sentences, PAD))).toEqual(sentences)
  })

  it('does not mutate its input rows', () => {
    const row = ['a']
    padSentences([row, ['b', 'c']], PAD)
    expect(row).toEqual(['a'])
  })
})

describe('asTokenBatches', () => {
  const batch: BatchEvent = {
    kind: 'batch',
    batchId: 0,
    phase: 1,
    shard: 2,
    sampleIds: [10, 11],
    src: [['a', 'b', 'c'], ['d']],
    tgt: [['x'], ['y', 'z']],
    wordCount: 7,
  }

  it('pads both sides and passes batch metadata through', async () => {
    const out = []
    for await (const padded of asTokenBatches([batch], PAD)) {
      out.push(padded)
    }
    expect(out).toHaveLength(1)
    expect(out[0].shard).toBe(2)
    expect(out[0].sampleIds).toEqual([10, 11])
    expect(out[0].src.tokens[1]).toEqual(['d', PAD, PAD])
    expect(out[0].tgt.tokens[0]).toEqual(['x', PAD])
    expect(stripPadding(out[0].src)).toEqual(batch.src)
    expect(stripPadding(out[0].tgt)).toEqual(batch.tgt)
  })

  it('yields nothing for an empty stream', async () => {
    const out = []
    for await (const padded of asTokenBatches([], PAD)) {
      out.push(padded)
    }
    expect(out).toEqual([])
  })

  it('invokes the control-event hook in order without reordering batches', async () => {
    const seen: string[] = []
    const events = [
      { kind: 'checkpoint', checkpoint: 1, batches: 1 } as const,
      batch,
      { kind: 'end', totalBatches: 1 } as const,
    ]
    const ids: number[] = []
    for await (const padded of asTokenBatches(events, PAD, (e) => seen.push(e.kind))) {
      ids.push(padded.batchId)
    }
    expect(seen).toEqual(['checkpoint', 'batch', 'end'])
    expect(ids).toEqual([0])
  })
})
