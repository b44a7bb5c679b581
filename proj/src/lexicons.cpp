#include "plad/lexicons.hpp"

namespace plad::lexicons {

const std::vector<std::string>& first_person() {
  static const std::vector<std::string> v = {"我", "我们", "咱", "咱们", "俺",
                                             "I",  "me",   "my", "mine", "we"};
  return v;
}

const std::vector<std::string>& second_person() {
  static const std::vector<std::string> v = {"你", "你们", "您", "you", "your"};
  return v;
}

const std::vector<std::string>& disfluency() {
  static const std::vector<std::string> v = {"嗯",     "呃", "额",   "哎",  "唉",  "啊这",
                                             "那个",   "em", "emm",  "um",  "uh",  "hmm",
                                             "哦不对", "呃呃", "就是说", "等等"};
  return v;
}

const std::vector<std::string>& connective() {
  static const std::vector<std::string> v = {"但是",   "然而", "不过",     "虽然", "可是",
                                             "另一方面", "其实", "however", "but",  "although",
                                             "因此",   "所以", "therefore"};
  return v;
}

const std::vector<std::string>& sensory() {
  static const std::vector<std::string> v = {"香",   "甜",   "软",   "暖",   "脆",   "滑",
                                             "看到", "听到", "闻到", "尝到", "摸到", "颜色",
                                             "味道", "声音", "光线", "质感"};
  return v;
}

const std::vector<std::string>& temporal() {
  static const std::vector<std::string> v = {"昨天", "今天", "明天", "后来", "然后",  "最后",
                                             "去年", "现在", "当时", "接着", "那天",  "凌晨",
                                             "yesterday", "today", "then", "now"};
  return v;
}

const std::vector<std::string>& hedge() {
  static const std::vector<std::string> v = {"可能", "大概", "也许",  "或许",    "好像",
                                             "似乎", "应该", "maybe", "perhaps", "probably"};
  return v;
}

const std::vector<std::string>& emotive() {
  static const std::vector<std::string> v = {"爱",   "恨",   "开心", "难过", "激动", "感动",
                                             "哭",   "笑",   "喜欢", "讨厌", "超爱", "崩溃",
                                             "治愈", "心动", "震撼", "委屈"};
  return v;
}

const std::vector<std::string>& empathy() {
  static const std::vector<std::string> v = {"理解", "懂你", "抱抱", "加油", "辛苦了",
                                             "心疼", "共情", "支持", "陪伴"};
  return v;
}

const std::vector<std::string>& value() {
  static const std::vector<std::string> v = {"值得", "应该", "重要",  "意义",   "原则",
                                             "坚持", "相信", "worth", "should", "important"};
  return v;
}

const std::vector<std::string>& interjection() {
  static const std::vector<std::string> v = {"哈哈", "哈哈哈", "嘻嘻", "啦", "哟",
                                             "呀",   "嘛",     "捏",   "绝了", "冲鸭"};
  return v;
}

const std::vector<std::string>& greeting() {
  static const std::vector<std::string> v = {"大家好", "姐妹们", "宝子们", "家人们", "朋友们"};
  return v;
}

const std::vector<std::string>& narrative() {
  static const std::vector<std::string> v = {"首先", "然后", "接着", "最后", "有一天",
                                             "突然", "结果", "于是", "从前"};
  return v;
}

const std::vector<std::string>& perspective() {
  static const std::vector<std::string> v = {"有人说",     "从另一个角度", "一方面", "换个角度",
                                             "个人认为",   "客观来说",     "反过来想", "整体来看"};
  return v;
}

const std::vector<std::string>& demonstrative() {
  static const std::vector<std::string> v = {"它", "这", "那", "他", "她", "这个", "那个",
                                             "this", "that", "it"};
  return v;
}

const std::vector<std::string>& emoji() {
  static const std::vector<std::string> v = {"😊", "😂", "🥰", "😭", "✨", "🌟", "💕", "👍",
                                             "🎉", "😅", "🤔", "🙏", "🔥", "💪", "🌸", "🍀"};
  return v;
}

const std::vector<std::string>& base_vocabulary() {
  // common hanzi first, filler Latin later; class vocabularies are rotated
  // slices of this list
  static const std::vector<std::string> v = {
      "的",   "一",   "是",   "在",   "有",   "人",   "这",   "中",   "大",   "来",   "上",
      "国",   "个",   "到",   "说",   "时",   "要",   "就",   "出",   "会",   "可",   "也",
      "对",   "生",   "能",   "而",   "子",   "那",   "得",   "于",   "着",   "下",   "自",
      "之",   "年",   "过",   "发",   "后",   "作",   "里",   "用",   "道",   "行",   "所",
      "然",   "家",   "种",   "事",   "成",   "方",   "多",   "经",   "么",   "去",   "法",
      "学",   "如",   "都",   "同",   "现",   "当",   "没",   "动",   "面",   "起",   "看",
      "定",   "天",   "分",   "还",   "进",   "好",   "小",   "部",   "其",   "些",   "主",
      "样",   "理",   "心",   "她",   "本",   "前",   "开",   "但",   "因",   "只",   "从",
      "想",   "实",   "日",   "军",   "者",   "意",   "无",   "力",   "它",   "与",   "长",
      "把",   "机",   "十",   "民",   "第",   "公",   "此",   "已",   "工",   "使",   "情",
      "明",   "性",   "知",   "全",   "三",   "又",   "关",   "点",   "正",   "业",   "外",
      "两",   "高",   "间",   "由",   "问",   "很",   "最",   "重",   "并",   "物",   "手",
      "应",   "战",   "向",   "头",   "文",   "体",   "政",   "美",   "相",   "见",   "被",
      "利",   "什",   "二",   "等",   "产",   "或",   "新",   "己",   "制",   "身",   "果",
      "加",   "西",   "斯",   "月",   "话",   "合",   "回",   "特",   "代",   "内",   "信",
      "表",   "化",   "老",   "给",   "世",   "位",   "次",   "度",   "门",   "任",   "常",
      "先",   "海",   "通",   "教",   "儿",   "原",   "东",   "声",   "提",   "立",   "及",
      "比",   "员",   "解",   "水",   "名",   "真",   "论",   "处",   "走",   "义",   "各",
      "入",   "几",   "口",   "认",   "条",   "平",   "系",   "气",   "题",   "活",   "尔",
      "更",   "别",   "打",   "女",   "变",   "四",   "神",   "总",   "何",   "电",   "数",
      "安",   "少",   "报",   "才",   "结",   "反",   "受",   "目",   "太",   "量",   "再",
      "感",   "建",   "务",   "做",   "接",   "必",   "场",   "件",   "计",   "管",   "期",
      "市",   "直",   "德",   "资",   "命",   "山",   "金",   "指",   "克",   "许",   "统",
      "区",   "保",   "至",   "队",   "形",   "社",   "便",   "空",   "决",   "治",   "展",
      "马",   "科",   "司",   "五",   "基",   "眼",   "书",   "非",   "则",   "听",   "白",
      "却",   "界",   "达",   "光",   "放",   "强",   "即",   "像",   "难",   "且",   "权",
      "思",   "王",   "象",   "完",   "设",   "式",   "色",   "路",   "记",   "南",   "品",
      "住",   "告",   "类",   "求",   "据",   "程",   "北",   "边",   "死",   "张",   "该",
      "交",   "规",   "万",   "取",   "拉",   "格",   "望",   "觉",   "术",   "领",   "共",
      "确",   "传",   "师",   "观",   "清",   "今",   "切",   "院",   "让",   "识",   "候",
      "带",   "导",   "争",   "运",   "笑",   "飞",   "风",   "步",   "改",   "收",   "根",
      "干",   "造",   "言",   "联",   "持",   "组",   "每",   "济",   "车",   "亲",   "极",
      "林",   "服",   "快",   "办",   "议",   "往",   "元",   "英",   "士",   "证",   "近",
      "失",   "转",   "夫",   "令",   "准",   "布",   "始",   "怎",   "呢",   "存",   "未",
      "远",   "叫",   "台",   "单",   "影",   "具",   "罗",   "字",   "爱",   "击",   "流",
      "备",   "兵",   "连",   "调",   "深",   "商",   "算",   "质",   "团",   "集",   "百",
      "需",   "价",   "花",   "党",   "华",   "城",   "石",   "级",   "整",   "府",   "离",
      "况",   "亚",   "请",   "技",   "际",   "约",   "示",   "复",   "病",   "息",   "究",
      "线",   "似",   "官",   "火",   "断",   "精",   "满",   "支",   "视",   "消",   "越",
      "器",   "容",   "照",   "须",   "九",   "增",   "研",   "写",   "称",   "企",   "八",
      "功",   "吗",   "包",   "片",   "史",   "委",   "乎",   "查",   "轻",   "易",   "早",
      "曾",   "除",   "农",   "找",   "装",   "广",   "显",   "吧",   "阿",   "李",   "标",
      "谈",   "吃",   "图",   "念",   "六",   "引",   "历",   "首",   "医",   "局",   "突",
      "专",   "费",   "号",   "尽",   "另",   "周",   "较",   "注",   "语",   "仅",   "考",
      "落",   "青",   "随",   "选",   "列",   "武",   "红",   "响",   "虽",   "推",   "势",
      "参",   "希",   "古",   "众",   "构",   "房",   "半",   "节",   "土",   "投",   "某",
      "案",   "黑",   "维",   "革",   "划",   "敌",   "致",   "陈",   "律",   "足",   "态",
      "护",   "七",   "兴",   "派",   "孩",   "验",   "责",   "营",   "星",   "够",   "章",
      "音",   "跟",   "志",   "底",   "站",   "严",   "巴",   "例",   "防",   "族",   "供",
      "效",   "续",   "施",   "留",   "讲",   "型",   "料",   "终",   "答",   "紧",   "黄",
      "绝",   "奇",   "察",   "母",   "京",   "段",   "依",   "批",   "群",   "项",   "故",
      "按",   "河",   "米",   "围",   "江",   "织",   "害",   "斗",   "双",   "境",   "客",
      "纪",   "采",   "举",   "杀",   "攻",   "父",   "苏",   "密",   "低",   "朝",   "友",
      "诉",   "止",   "细",   "愿",   "千",   "值",   "仍",   "男",   "钱",   "破",   "网",
      "热",   "助",   "倒",   "育",   "属",   "坐",   "帝",   "限",   "船",   "脸",   "职",
      "速",   "刻",   "乐",   "否",   "刚",   "威",   "毛",   "状",   "率",   "甚",   "独",
      "球",   "般",   "普",   "怕",   "弹",   "校",   "苦",   "创",   "假",   "久",   "错",
      "承",   "印",   "晚",   "兰",   "试",   "股",   "拿",   "脑",   "预",   "谁",   "益",
      "阳",   "若",   "哪",   "微",   "尼",   "继",   "送",   "急",   "血",   "惊",   "伤",
      "素",   "药",   "适",   "波",   "夜",   "省",   "初",   "喜",   "卫",   "源",   "食",
      "险",   "待",   "述",   "陆",   "习",   "置",   "居",   "劳",   "财",   "环",   "排",
      "福",   "纳",   "欢",   "雷",   "警",   "获",   "模",   "充",   "负",   "云",   "停",
      "木",   "游",   "龙",   "树",   "疑",   "层",   "冷",   "洲",   "冲",   "射",   "略",
      "范",   "竟",   "句",   "室",   "异",   "激",   "汉",   "村",   "哈",   "策",   "演",
      "简",   "卡",   "罪",   "判",   "担",   "州",   "静",   "退",   "既",   "衣",   "您",
      "宗",   "积",   "余",   "痛",   "检",   "差",   "富",   "灵",   "协",   "角",   "占",
      "配",   "征",   "修",   "皮",   "挥",   "胜",   "降",   "阶",   "审",   "沉",   "坚",
      "善",   "妈",   "刘",   "读",   "啊",   "超",   "免",   "压",   "银",   "买",   "皇",
      "养",   "伊",   "怀",   "执",   "副",   "乱",   "抗",   "犯",   "追",   "帮",   "宣",
      "佛",   "岁",   "航",   "优",   "怪",   "香",   "著",   "田",   "铁",   "控",   "税",
      "左",   "右",   "份",   "穿",   "艺",   "背",   "阵",   "草",   "脚",   "概",   "恶",
      "块",   "顿",   "敢",   "守",   "酒",   "岛",   "托",   "央",   "户",   "烈",   "洋",
      "哥",   "索",   "胡",   "款",   "靠",   "评",   "版",   "宝",   "座",   "释",   "景",
      "顾",   "弟",   "登",   "货",   "互",   "付",   "伯",   "慢",   "欧",   "换",   "闻",
      "危",   "忙",   "核",   "暗",   "姐",   "介",   "坏",   "讨",   "丽",   "良",   "序",
      "升",   "监",   "临",   "亮",   "露",   "永",   "呼",   "味",   "野",   "架",   "域",
      "沙",   "掉",   "括",   "舰",   "鱼",   "杂",   "误",   "湾",   "吉",   "减",   "编",
      "楚",   "肯",   "测",   "败",   "屋",   "跑",   "梦",   "散",   "温",   "困",   "剑",
      "渐",   "封",   "救",   "贵",   "枪",   "缺",   "楼",   "县",   "尚",   "毫",   "移",
      "娘",   "朋",   "画",   "班",   "智",   "亦",   "耳",   "恩",   "短",   "掌",   "恐",
      "遗",   "固",   "席",   "松",   "秘",   "谢",   "鲁",   "遇",   "康",   "虑",   "幸",
      "均",   "销",   "钟",   "诗",   "藏",   "赶",   "剧",   "票",   "损",   "忽",   "巨",
      "炮",   "旧",   "端",   "探",   "湖",   "录",   "叶",   "春",   "乡",   "附",   "吸",
      "予",   "礼",   "港",   "雨",   "呀",   "板",   "庭",   "妇",   "归",   "睛",   "饭",
      "额",   "含",   "顺",   "输",   "摇",   "招",   "婚",   "脱",   "补",   "谓",   "督",
      "毒",   "油",   "疗",   "旅",   "泽",   "材",   "灭",   "逐",   "莫",   "笔",   "亡",
      "鲜",   "词",   "圣",   "择",   "寻",   "厂",   "睡",   "博",   "勒",   "烟",   "授",
      "诺",   "伦",   "岸",   "奥",   "唐",   "卖",   "俄",   "炸",   "载",   "洛",   "健",
      "堂",   "旁",   "宫",   "喝",   "借",   "君",   "禁",   "阴",   "园",   "谋",   "宋",
      "避",   "抓",   "荣",   "姑",   "孙",   "逃",   "牙",   "束",   "跳",   "顶",   "玉",
      "镇",   "雪",   "午",   "练",   "迫",   "爷",   "篇",   "肉",   "嘴",   "馆",   "遍",
      "凡",   "础",   "洞",   "卷",   "坦",   "牛",   "宁",   "纸",   "诸",   "训",   "私",
      "庄",   "祖",   "丝",   "翻",   "暴",   "森",   "塔",   "默",   "握",   "戏",   "隐",
      "熟",   "骨",   "访",   "弱",   "蒙",   "歌",   "店",   "鬼",   "软",   "典",   "欲",
      "萨",   "伙",   "遭",   "盘",   "爸",   "扩",   "盖",   "弄",   "雄",   "稳",   "忘",
      "亿",   "刺",   "拥",   "徒",   "姆",   "杨",   "齐",   "赛",   "趣",   "曲",   "刀",
      "床",   "迎",   "冰",   "虚",   "玩",   "析",   "窗",   "醒",   "妻",   "透",   "购",
      "替",   "塞",   "努",   "休",   "虎",   "扬",   "途",   "侵",   "刑",   "绿",   "兄",
      "迅",   "套",   "贸",   "毕",   "唯",   "谷",   "轮",   "库",   "迹",   "尤",   "竞",
      "街",   "促",   "延",   "震",   "弃",   "甲",   "伟",   "麻",   "川",   "申",   "缓",
      "潜",   "闪",   "售",   "灯",   "针",   "哲",   "络",   "抵",   "朱",   "埃",   "抱",
      "鼓",   "植",   "纯",   "夏",   "忍",   "页",   "杰",   "筑",   "折",   "郑",   "贝",
      "尊",   "吴",   "秀",   "混",   "臣",   "雅",   "振",   "染",   "盛",   "怒",   "舞",
      "圆",   "搞",   "狂",   "措",   "姓",   "残",   "秋",   "培",   "迷",   "诚",   "宽",
      "宇",   "猛",   "摆",   "梅",   "毁",   "伸",   "摩",   "盟",   "末",   "乃",   "悲",
      "拍",   "丁",   "赵",   "硬",   "麦",   "蒋",   "操",   "耶",   "阻",   "订",   "彩",
      "抽",   "赞",   "魔",   "纷",   "沿",   "喊",   "违",   "妹",   "浪",   "汇",   "币",
      "丰",   "蓝",   "殊",   "献",   "桌",   "啦",   "瓦",   "莱",   "援",   "译",   "夺",
      "汽",   "烧",   "痕",   "锋",   "塑",   "寒",   "妙",   "single", "share", "style",
      "daily", "note",  "vlog",  "tips",  "plan",  "idea",  "life",  "nice",  "cool",
      "mark",  "post",  "shop",  "city",  "home",  "care",  "slow",  "walk",  "read",
      "park",  "cafe",  "blue",  "warm",  "soft",  "pure",  "calm",  "easy",  "free",
      "2023",  "2024",  "2025"};
  return v;
}

}  // namespace plad::lexicons
